"""Exact tour and Steiner distance aggregates for graphs and digraphs.

The package computes, for a connected graph or strongly connected digraph,
the length tsp_k(S) of a shortest closed walk through each k-set S, the
Steiner distance d_k(S) of a lightest connected subgraph spanning S, and
their sums and means over all k-sets. On top of the raw numbers sit
checkers for the inequalities relating the two families and for the
structural characterizations of when they are tight.

Everything arithmetic is exact: integer weights stay integers, rational
weights travel as fractions, and sampled estimates are the only place a
float appears.
"""

__version__ = "0.1.0"

from .errors import ParseError, PreconditionError, ResourceBudgetError
from .graphs import (
    Digraph,
    Graph,
    count_connected_graphs,
    encode_graph6,
    enumerate_connected_graphs,
    make_family,
    parse_edge_list,
    parse_graph6,
)
from .metric import DistanceMatrix, apsp, mean_distance, wiener
from .subsets import colex_iter, colex_rank, colex_unrank
from .tsp import (
    EccentricityProfile,
    EstimateResult,
    TspResult,
    tsp_distance,
    tsp_eccentricity,
    tsp_mean,
    tsp_mean_estimate,
    tsp_wiener,
)
from .steiner import (
    SteinerResult,
    steiner_distance,
    steiner_distance_digraph,
    steiner_mean,
    steiner_wiener,
)
from .formulas import evaluate_family, wtsp3_identity
from .checks import (
    InvariantReport,
    TheoremVerdict,
    TripleCertificate,
    check_bounds,
    check_digraph_tsp_ge_steiner,
    check_ecc_observations,
    check_perm_average_bound,
    check_subadditivity,
    check_triple_condition,
    check_tsp_le_2steiner,
    delavina_waller_experiment,
    exhaustive_scan,
)

__all__ = [
    "__version__",
    "ParseError", "PreconditionError", "ResourceBudgetError",
    "Graph", "Digraph", "make_family", "parse_graph6", "encode_graph6",
    "parse_edge_list", "enumerate_connected_graphs", "count_connected_graphs",
    "DistanceMatrix", "apsp", "wiener", "mean_distance",
    "colex_rank", "colex_unrank", "colex_iter",
    "TspResult", "EccentricityProfile", "EstimateResult",
    "tsp_distance", "tsp_wiener", "tsp_mean", "tsp_eccentricity",
    "tsp_mean_estimate",
    "SteinerResult", "steiner_distance", "steiner_distance_digraph",
    "steiner_wiener", "steiner_mean",
    "evaluate_family", "wtsp3_identity",
    "TheoremVerdict", "TripleCertificate", "InvariantReport",
    "check_tsp_le_2steiner", "check_triple_condition", "check_bounds",
    "check_perm_average_bound", "check_digraph_tsp_ge_steiner",
    "check_subadditivity", "check_ecc_observations", "exhaustive_scan",
    "delavina_waller_experiment",
]
