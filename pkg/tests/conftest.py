import random
from fractions import Fraction

import pytest

from tspwiener import Digraph, Graph

# Filled by the acceptance battery; replayed after the run so the per-criterion
# verdict lines are visible even when pytest captures test output.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_connected_graph(rng: random.Random, n: int,
                           weighted: bool = False,
                           extra: float = 0.35) -> Graph:
    """Random spanning tree plus a coin flip on each remaining pair."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[rng.randrange(i)]
        v = order[i]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    weights = None
    if weighted:
        weights = {}
        for e in edges:
            if rng.random() < 0.25:
                weights[e] = Fraction(rng.randint(1, 12), rng.randint(1, 4))
            else:
                weights[e] = rng.randint(1, 9)
    return Graph(n, sorted(edges), weights)


def random_strongly_connected_digraph(rng: random.Random, n: int,
                                      weighted: bool = False,
                                      extra: float = 0.3) -> Digraph:
    """Random Hamiltonian cycle plus extra arcs: strongly connected for sure."""
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i - 1], order[i]) for i in range(n)}
    for u in range(n):
        for v in range(n):
            if u != v and (u, v) not in arcs and rng.random() < extra:
                arcs.add((u, v))
    weights = None
    if weighted:
        weights = {a: rng.randint(1, 9) for a in arcs}
    return Digraph(n, sorted(arcs), weights)


def random_tree(rng: random.Random, n: int, weighted: bool = False) -> Graph:
    return random_connected_graph(rng, n, weighted=weighted, extra=0.0)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)
