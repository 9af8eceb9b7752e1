"""Command-line surface: compute, verify, estimate.

stdout carries exactly one report document (JSON, or CSV with --csv);
diagnostics go to stderr. Exit codes: 0 success, 1 malformed input, 2
precondition failure (disconnected instance, k out of range), 3 resource
budget, 4 a checked verdict failed. Reports for identical inputs and seeds
are identical apart from the timing block, whatever --threads says.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from time import perf_counter

from . import __version__
from .checks import (
    TheoremVerdict,
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
from .errors import ParseError, PreconditionError, ResourceBudgetError
from .graphs import (
    _FAMILIES,
    Digraph,
    Graph,
    encode_graph6,
    make_family,
    parse_edge_list,
    parse_graph6,
)
from .metric import apsp, mean_distance, wiener
from .report import ReportDocument, render_csv, render_json
from .steiner import steiner_mean, steiner_wiener
from .tsp import tsp_eccentricity, tsp_mean, tsp_mean_estimate, tsp_wiener

_THEOREMS = ("all", "2steiner", "triple", "bounds", "perm", "digraph",
             "subadd", "ecc", "dlw")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="tspwiener", description=__doc__)
    top.add_argument("--version", action="version",
                     version=f"tspwiener {__version__}")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def add_source(p, required=True):
        grp = p.add_argument_group("graph source")
        grp.add_argument("--family", metavar="NAME:P1[,P2]",
                         help="named family, e.g. cycle:8, kab:2,3, dp:20,6")
        grp.add_argument("--graph6", metavar="TEXT|FILE",
                         help="a graph6 string, or a file of graph6 lines")
        grp.add_argument("--edges", metavar="FILE",
                         help="edge-list file: lines 'u v [weight]'")
        grp.add_argument("--digraph", action="store_true",
                         help="treat the edge list as directed; asserts the "
                              "instance is a digraph otherwise")
        p.add_argument("--k", type=int, default=None, help="set size k")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for sweeps (results identical)")
        p.add_argument("--csv", action="store_true",
                       help="emit the report as CSV instead of JSON")

    pc = sub.add_parser("compute", help="exact invariants of one instance")
    add_source(pc)
    for flag, text in (
        ("--wtspk", "tour index: sum of tsp_k over all k-sets"),
        ("--wk", "Steiner index: sum of d_k over all k-sets"),
        ("--mutspk", "mean tour distance"),
        ("--muk", "mean Steiner distance"),
        ("--wiener", "ordinary Wiener index and mean distance"),
        ("--ecc", "tour eccentricity profile with radius and diameter"),
    ):
        pc.add_argument(flag, action="store_true", help=text)
    pc.set_defaults(func=cmd_compute)

    pv = sub.add_parser("verify", help="run theorem checkers")
    add_source(pv, required=False)
    pv.add_argument("--theorem", choices=_THEOREMS, default="all")
    pv.add_argument("--scan", type=int, metavar="N",
                    help="check every connected graph of order N (N <= 7)")
    pv.add_argument("--j", type=int, default=None,
                    help="second set size for subadditivity (default: k)")
    pv.add_argument("--against", metavar="NAME:P",
                    help="expected comparison family for --theorem dlw")
    pv.set_defaults(func=cmd_verify)

    pe = sub.add_parser("estimate", help="sampled mean tour distance")
    add_source(pe)
    pe.add_argument("--samples", type=int, default=10_000)
    pe.add_argument("--seed", type=int, default=0)
    pe.set_defaults(func=cmd_estimate)
    return top


# ---------------------------------------------------------------------------
# graph source resolution


def _parse_family_spec(spec: str):
    name, sep, rest = spec.partition(":")
    if not name:
        raise ParseError(f"bad family spec {spec!r}: expected name:params")
    params = []
    if sep:
        for tok in rest.split(","):
            tok = tok.strip()
            if not tok:
                raise ParseError(f"bad family spec {spec!r}: empty parameter")
            try:
                params.append(int(tok))
            except ValueError:
                raise ParseError(
                    f"bad family spec {spec!r}: parameter {tok!r} is not an "
                    f"integer") from None
    return name, params


def _read_graph6_source(value: str) -> list[Graph]:
    if os.path.exists(value):
        with open(value, "r", encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh]
        graphs = [parse_graph6(ln) for ln in lines if ln]
        if not graphs:
            raise ParseError(f"graph6 file {value!r} contains no graphs")
        return graphs
    return [parse_graph6(value)]


def _resolve_instance(args, allow_many=False):
    """Return (graph-or-list, descriptor dict, family spec or None)."""
    picked = [name for name in ("family", "graph6", "edges")
              if getattr(args, name, None)]
    if len(picked) != 1:
        raise ParseError("exactly one of --family, --graph6, --edges is required")
    spec = None
    if args.family:
        spec = args.family
        name, params = _parse_family_spec(spec)
        if name not in _FAMILIES:
            raise ParseError(
                f"unknown family {name!r}; expected one of {sorted(_FAMILIES)}")
        g = make_family(name, *params)
        source = f"family:{spec}"
    elif args.graph6:
        graphs = _read_graph6_source(args.graph6)
        if len(graphs) > 1:
            if not allow_many:
                raise ParseError(
                    f"{args.graph6!r} holds {len(graphs)} graphs; this "
                    f"command takes a single instance")
            return graphs, {"source": f"graph6:{args.graph6}",
                            "graphs": len(graphs)}, None
        g = graphs[0]
        source = f"graph6:{args.graph6}"
    else:
        try:
            with open(args.edges, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read edge list {args.edges!r}: {exc}")
        g = parse_edge_list(text, directed=args.digraph)
        source = f"edges:{args.edges}"
    if args.digraph and not g.directed:
        raise PreconditionError(
            "--digraph was given but the instance is undirected")
    desc = {
        "source": source,
        "n": g.n,
        "m": g.m,
        "directed": g.directed,
        "weighted": g.weighted,
    }
    if isinstance(g, Graph) and not g.weighted:
        try:
            desc["graph6"] = encode_graph6(g)
        except (ValueError, PreconditionError):
            desc["graph6"] = None
    return g, desc, spec


def _require_k(args) -> int:
    if args.k is None:
        raise ParseError("--k is required for this command")
    return args.k


def _new_doc(args, argv, instance, parameters) -> ReportDocument:
    return ReportDocument(
        tool=f"tspwiener {__version__}",
        command=list(argv),
        instance=instance,
        parameters=parameters,
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args, argv):
    g, desc, _ = _resolve_instance(args)
    wanted = [w for w in ("wtspk", "wk", "mutspk", "muk", "wiener", "ecc")
              if getattr(args, w)]
    if not wanted:
        raise ParseError(
            "nothing to compute: pass at least one of --wtspk --wk --mutspk "
            "--muk --wiener --ecc")
    needs_k = [w for w in wanted if w != "wiener"]
    k = _require_k(args) if needs_k else None
    doc = _new_doc(args, argv, desc,
                   {"k": k, "threads": args.threads, "invariants": wanted})
    t0 = perf_counter()
    results = {}
    for w in wanted:
        if w == "wtspk":
            results["wtspk"] = tsp_wiener(g, k, threads=args.threads)
        elif w == "wk":
            results["wk"] = steiner_wiener(g, k)
        elif w == "mutspk":
            results["mutspk"] = tsp_mean(g, k, threads=args.threads)
        elif w == "muk":
            results["muk"] = steiner_mean(g, k)
        elif w == "wiener":
            m = apsp(g)
            results["wiener"] = wiener(m)
            results["mean_distance"] = mean_distance(m)
        elif w == "ecc":
            prof = tsp_eccentricity(g, k)
            results["ecc"] = {
                "values": prof.values,
                "witnesses": prof.witnesses,
                "radius": prof.radius,
                "diameter": prof.diameter,
            }
    doc.results = results
    doc.timing_ms["compute"] = (perf_counter() - t0) * 1000
    return doc, 0


def _triple_verdict(g: Graph) -> TheoremVerdict:
    predicted, cert = check_triple_condition(g)
    w3 = steiner_wiener(g, 3)
    rhs = Fraction(g.n - 2, 2) * wiener(apsp(g))
    equality = w3 == rhs
    return TheoremVerdict(
        theorem="steiner-three-vs-wiener",
        instance=f"n={g.n}, m={g.m}",
        holds=w3 >= rhs,
        equality=equality,
        values=(w3, rhs),
        witness={"certificate": cert},
        predicted_equality=predicted,
        characterization_agrees=predicted == equality,
    )


def _verify_single(args, g) -> list[TheoremVerdict]:
    theorem = args.theorem
    verdicts: list[TheoremVerdict] = []
    if theorem == "all":
        k = _require_k(args)
        if isinstance(g, Digraph):
            verdicts.append(check_digraph_tsp_ge_steiner(g, k))
        else:
            verdicts.append(check_tsp_le_2steiner(g, k))
            if not g.weighted:
                verdicts.append(check_bounds(g, k))
            verdicts.append(check_perm_average_bound(g, k))
            if g.n >= 3 and not g.weighted:
                verdicts.append(_triple_verdict(g))
        if 2 * k - 1 <= g.n:
            verdicts.append(check_subadditivity(g, k, k))
        return verdicts
    if theorem == "triple":
        if isinstance(g, Digraph):
            raise PreconditionError("the triple test needs an undirected graph")
        return [_triple_verdict(g)]
    if theorem == "2steiner":
        return [check_tsp_le_2steiner(g, _require_k(args))]
    if theorem == "bounds":
        return [check_bounds(g, _require_k(args))]
    if theorem == "perm":
        return [check_perm_average_bound(g, _require_k(args))]
    if theorem == "digraph":
        return [check_digraph_tsp_ge_steiner(g, _require_k(args))]
    if theorem == "subadd":
        k = _require_k(args)
        j = args.j if args.j is not None else k
        return [check_subadditivity(g, j, k)]
    if theorem == "ecc":
        return [check_ecc_observations(g.n, _require_k(args))]
    raise ParseError(f"--theorem {theorem} needs --family broom:d")


def cmd_verify(args, argv):
    params = {"theorem": args.theorem, "k": args.k, "threads": args.threads}
    if args.scan is not None:
        if args.theorem not in ("all", "ecc"):
            raise ParseError("--scan runs the full battery; use --theorem all")
        if args.theorem == "ecc":
            verdict = check_ecc_observations(args.scan, _require_k(args))
            doc = _new_doc(args, argv, {"source": f"scan:{args.scan}"}, params)
            doc.verdicts = [verdict]
            return doc, 0 if verdict.holds else 4
        t0 = perf_counter()
        rep = exhaustive_scan(args.scan, args.k, threads=args.threads)
        doc = _new_doc(args, argv, {"source": f"scan:{args.scan}",
                                    "instance": rep.instance}, params)
        doc.results = {"scan": rep.data, "ok": rep.ok}
        doc.findings = list(rep.findings)
        doc.timing_ms["scan"] = (perf_counter() - t0) * 1000
        return doc, 0 if rep.ok else 4

    if args.theorem == "dlw":
        if not args.family:
            raise ParseError("--theorem dlw takes --family broom:d")
        name, fparams = _parse_family_spec(args.family)
        if name != "broom" or len(fparams) != 1:
            raise ParseError("--theorem dlw takes --family broom:d")
        d = fparams[0]
        k = _require_k(args)
        if args.against:
            aname, aparams = _parse_family_spec(args.against)
            if aname != "cycle" or aparams != [2 * d + 1]:
                raise PreconditionError(
                    f"--against {args.against!r} does not match the "
                    f"comparison cycle:{2 * d + 1} for diameter {d}")
        t0 = perf_counter()
        rep = delavina_waller_experiment(d, k)
        doc = _new_doc(args, argv,
                       {"source": f"family:{args.family}",
                        "instance": rep.instance},
                       {**params, "diameter": d, "against": args.against})
        doc.results = {"experiment": rep.data, "ok": rep.ok}
        doc.findings = list(rep.findings)
        doc.timing_ms["experiment"] = (perf_counter() - t0) * 1000
        return doc, 0 if rep.ok else 4

    resolved, desc, _ = _resolve_instance(args, allow_many=True)
    t0 = perf_counter()
    if isinstance(resolved, list):
        if args.theorem != "all":
            raise ParseError(
                "a multi-graph file runs the full battery; use --theorem all")
        rep = exhaustive_scan(k=args.k, graphs=resolved)
        doc = _new_doc(args, argv, {**desc, "instance": rep.instance}, params)
        doc.results = {"scan": rep.data, "ok": rep.ok}
        doc.findings = list(rep.findings)
        doc.timing_ms["scan"] = (perf_counter() - t0) * 1000
        return doc, 0 if rep.ok else 4
    verdicts = _verify_single(args, resolved)
    doc = _new_doc(args, argv, desc, {**params, "j": args.j})
    doc.verdicts = verdicts
    doc.timing_ms["verify"] = (perf_counter() - t0) * 1000
    failed = [v for v in verdicts if not v.holds]
    if failed:
        print(f"verdict failed: {failed[0].theorem} on {failed[0].instance}",
              file=sys.stderr)
    return doc, 4 if failed else 0


def cmd_estimate(args, argv):
    g, desc, _ = _resolve_instance(args)
    k = _require_k(args)
    if args.samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {args.samples}")
    doc = _new_doc(args, argv, desc,
                   {"k": k, "samples": args.samples, "seed": args.seed})
    doc.seed = args.seed
    t0 = perf_counter()
    est = tsp_mean_estimate(g, k, samples=args.samples, seed=args.seed)
    doc.results = {
        "mean": est.mean,
        "stderr": est.stderr,
        "samples": est.samples,
    }
    doc.timing_ms["estimate"] = (perf_counter() - t0) * 1000
    return doc, 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    t0 = perf_counter()
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        doc, code = args.func(args, argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 2
    except ResourceBudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    doc.timing_ms["total"] = (perf_counter() - t0) * 1000
    sys.stdout.write(render_csv(doc) if args.csv else render_json(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
