"""Steiner distances: cheapest connected subgraphs spanning vertex sets.

For a graph the Steiner distance of S is the minimum total weight of a
connected subgraph containing S (always a tree). For a digraph it is the
minimum total arc weight of a subgraph in which the members of S are
mutually reachable.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _fast
from .errors import PreconditionError, ResourceBudgetError
from .graphs import Digraph, Graph, vertex_set
from .metric import (
    DistanceMatrix,
    Number,
    apsp,
    normalize_number,
    require_members_reachable,
)
from .subsets import colex_iter

# terminal-count cap for the subset dynamic program (state space 2^k * n)
DW_MAX_K = 16

# full-lattice sweeps hold 2^n * n int64 states
LATTICE_MAX_N = 16

# per-set sweeps refuse above roughly this many elementary DP operations
DW_OPS_BUDGET = 10**10

# digraph sweeps run a branch and bound per subset; keep the count sane
DIGRAPH_SWEEP_MAX = 20_000

# default node cap for one digraph branch and bound search
BB_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class SteinerResult:
    value: Number
    edges: tuple[tuple[int, int], ...]


def _dw_value_python(m: DistanceMatrix, terms: tuple[int, ...]) -> Number:
    k = len(terms)
    if k <= 1:
        return 0
    n = m.n
    size = 1 << k
    dp: list[list[Number | None]] = [[None] * n for _ in range(size)]
    for i in range(k):
        t = terms[i]
        row = dp[1 << i]
        for v in range(n):
            if m.finite(t, v):
                row[v] = m.get(t, v)
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        row = dp[mask]
        low = mask & (-mask)
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                rs = dp[sub]
                ro = dp[mask ^ sub]
                for v in range(n):
                    if rs[v] is None or ro[v] is None:
                        continue
                    c = rs[v] + ro[v]
                    if row[v] is None or c < row[v]:
                        row[v] = c
            sub = (sub - 1) & mask
        for v in range(n):
            best = row[v]
            for u in range(n):
                if row[u] is None or not m.finite(u, v):
                    continue
                c = row[u] + m.get(u, v)
                if best is None or c < best:
                    best = c
            row[v] = best
    val = dp[size - 2][terms[0]]
    if val is None:
        raise PreconditionError("members are not in one connected component")
    return val


def _steiner_value(m: DistanceMatrix, terms: tuple[int, ...]) -> Number:
    if len(terms) <= 1:
        return 0
    if m.int_matrix is not None:
        return int(_fast.dw_terms_set(m.int_matrix, np.array(terms, dtype=np.int64)))
    return normalize_number(_dw_value_python(m, terms))


# ---------------------------------------------------------------------------
# witness reconstruction (undirected)


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _forced_value(
    g: Graph,
    mem: tuple[int, ...],
    forced: list[tuple[int, int]],
    excluded: set[tuple[int, int]],
) -> Number | None:
    """Cheapest spanning-subgraph weight through mem that contains every
    forced edge and avoids every excluded one; None when infeasible."""
    dsu = _DSU(g.n)
    fweight: Number = 0
    for u, v in forced:
        dsu.union(u, v)
        fweight += g.weight(u, v)
    reps = sorted({dsu.find(v) for v in range(g.n)})
    qid = {r: i for i, r in enumerate(reps)}
    qw: dict[tuple[int, int], Number] = {}
    for u, v in g.edges:
        if (u, v) in excluded:
            continue
        qu, qv = qid[dsu.find(u)], qid[dsu.find(v)]
        if qu == qv:
            continue
        key = (qu, qv) if qu < qv else (qv, qu)
        w = g.weight(u, v)
        if key not in qw or w < qw[key]:
            qw[key] = w
    anchors = set(mem)
    for u, v in forced:
        anchors.add(u)
        anchors.add(v)
    qterms = tuple(sorted({qid[dsu.find(t)] for t in anchors}))
    if len(qterms) <= 1:
        return fweight
    if len(qterms) > DW_MAX_K:
        raise ResourceBudgetError(
            "witness search needs %d contracted terminals, above DW_MAX_K = %d"
            % (len(qterms), DW_MAX_K)
        )
    # Excluding edges may disconnect the quotient; the solver needs an
    # all-finite matrix, so keep only the component around the terminals.
    qadj: dict[int, list[int]] = {}
    for qu, qv in qw:
        qadj.setdefault(qu, []).append(qv)
        qadj.setdefault(qv, []).append(qu)
    comp = {qterms[0]}
    stack = [qterms[0]]
    while stack:
        x = stack.pop()
        for y in qadj.get(x, ()):
            if y not in comp:
                comp.add(y)
                stack.append(y)
    if any(t not in comp for t in qterms):
        return None
    keep = sorted(comp)
    cid = {q: i for i, q in enumerate(keep)}
    cedges = {(min(cid[a], cid[b]), max(cid[a], cid[b])): w
              for (a, b), w in qw.items() if a in cid and b in cid}
    qg = Graph(len(keep), sorted(cedges), weights=cedges if g.weighted else None)
    qm = apsp(qg)
    return _steiner_value(qm, tuple(cid[t] for t in qterms)) + fweight


def _lex_min_tree(g: Graph, mem: tuple[int, ...], opt: Number) -> tuple[tuple[int, int], ...]:
    """Lexicographically smallest optimal spanning-tree edge set for mem.

    Edges are committed greedily in ascending order whenever some optimal
    solution extends the committed prefix, which characterizes the lex-min
    optimal edge set.
    """
    forced: list[tuple[int, int]] = []
    excluded: set[tuple[int, int]] = set()
    for e in g.edges:
        val = _forced_value(g, mem, forced + [e], excluded)
        if val is not None and val == opt:
            forced.append(e)
        else:
            excluded.add(e)
    dsu = _DSU(g.n)
    for u, v in forced:
        dsu.union(u, v)
    root = dsu.find(mem[0])
    if any(dsu.find(t) != root for t in mem):
        raise AssertionError("witness reconstruction lost the optimum")
    return tuple(forced)


def steiner_distance(g: Graph, members) -> SteinerResult:
    """Steiner distance of a member set, with a witnessing tree.

    The witness is the lexicographically smallest optimal edge set. A set
    with one vertex has Steiner distance 0.
    """
    if g.directed:
        raise PreconditionError("directed input: use steiner_distance_digraph")
    if not g.is_connected():
        raise PreconditionError("Steiner distance needs a connected instance")
    mem = vertex_set(members, g.n)
    k = len(mem)
    if k == 1:
        return SteinerResult(0, ())
    if k > DW_MAX_K:
        raise ResourceBudgetError(
            "set size %d exceeds the Steiner budget DW_MAX_K = %d" % (k, DW_MAX_K)
        )
    m = apsp(g)
    require_members_reachable(m, mem)
    opt = normalize_number(_steiner_value(m, mem))
    return SteinerResult(opt, _lex_min_tree(g, mem, opt))


# ---------------------------------------------------------------------------
# aggregates


def _steiner_sweep_budget(n: int, k: int) -> int:
    total = math.comb(n, k)
    ops = total * ((3**k) * n + (1 << k) * n * n)
    if ops > DW_OPS_BUDGET:
        raise ResourceBudgetError(
            "sweep over C(%d, %d) sets needs ~%d DP operations, above "
            "DW_OPS_BUDGET = %d" % (n, k, ops, DW_OPS_BUDGET)
        )
    return total


def _aggregate_preconditions(g: Graph | Digraph, k: int) -> DistanceMatrix:
    if not (2 <= k <= g.n):
        raise PreconditionError("k = %d out of range 2..%d" % (k, g.n))
    m = apsp(g)
    if not m.all_finite:
        kind = "strongly connected" if g.directed else "connected"
        raise PreconditionError("Steiner aggregates need a %s instance" % kind)
    return m


def steiner_wiener(g: Graph | Digraph, k: int) -> Number:
    """Sum of Steiner distances over all k-subsets of the vertex set."""
    m = _aggregate_preconditions(g, k)
    n = g.n
    if g.directed:
        if math.comb(n, k) > DIGRAPH_SWEEP_MAX:
            raise ResourceBudgetError(
                "C(%d, %d) digraph sets exceed DIGRAPH_SWEEP_MAX = %d"
                % (n, k, DIGRAPH_SWEEP_MAX)
            )
        acc: Number = 0
        for mem in colex_iter(n, k):
            acc += _bb_search(g, mem, BB_NODE_BUDGET, want_witness=False)[0]
        return normalize_number(acc)
    if m.int_matrix is not None:
        if n <= LATTICE_MAX_N:
            st = _fast.steiner_lattice(m.int_matrix)
            return sum(int(st[_mask_of(mem)]) for mem in colex_iter(n, k))
        total = _steiner_sweep_budget(n, k)
        B = _fast.binom_table(n, k)
        acc = 0
        chunk = 1 << 18
        for r0 in range(0, total, chunk):
            r1 = min(r0 + chunk, total)
            acc += int(_fast.dw_terms_range(m.int_matrix, k, r0, r1, B).sum())
        return acc
    _steiner_sweep_budget(n, k)
    fa = Fraction(0)
    for mem in colex_iter(n, k):
        fa += _dw_value_python(m, mem)
    return normalize_number(fa)


def _mask_of(mem: tuple[int, ...]) -> int:
    mask = 0
    for v in mem:
        mask |= 1 << v
    return mask


def steiner_mean(g: Graph | Digraph, k: int) -> Number:
    """Average Steiner distance over all k-subsets."""
    return normalize_number(Fraction(steiner_wiener(g, k), math.comb(g.n, k)))


# ---------------------------------------------------------------------------
# trees


def steiner_distance_tree_fast(t: Graph, members) -> Number:
    """Steiner distance on a tree in near-linear time.

    The minimal subtree doubles to a closed tour that visits the members in
    DFS discovery order, so its weight is half the cyclic sum of distances
    between consecutive members in that order.
    """
    if t.directed:
        raise PreconditionError("tree fast path is for undirected trees")
    if t.m != t.n - 1 or not t.is_connected():
        raise PreconditionError("input is not a tree")
    mem = vertex_set(members, t.n)
    if len(mem) == 1:
        return 0
    parent = [-1] * t.n
    depth = [0] * t.n
    wdepth: list[Number] = [0] * t.n
    tin = [0] * t.n
    stack = [0]
    parent[0] = 0
    seen = [False] * t.n
    counter = 0
    while stack:
        v = stack.pop()
        if seen[v]:
            continue
        seen[v] = True
        tin[v] = counter
        counter += 1
        for w in reversed(t.adjacency[v]):
            if not seen[w]:
                parent[w] = v
                depth[w] = depth[v] + 1
                wdepth[w] = wdepth[v] + t.weight(v, w)
                stack.append(w)

    def dist(u: int, v: int) -> Number:
        a, b = u, v
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a = parent[a]
            b = parent[b]
        return wdepth[u] + wdepth[v] - 2 * wdepth[a]

    order = sorted(mem, key=lambda v: tin[v])
    total: Number = dist(order[-1], order[0])
    for i in range(len(order) - 1):
        total += dist(order[i], order[i + 1])
    return normalize_number(Fraction(total) / 2)


# ---------------------------------------------------------------------------
# digraphs: exact branch and bound over arc subsets


def _bb_search(
    d: Digraph, mem: tuple[int, ...], node_budget: int, want_witness: bool
) -> tuple[Number, tuple[int, ...]]:
    """Exact minimum arc weight making mem mutually reachable.

    Branches on the arcs crossing the chosen-arc reachability cut of the
    first unsatisfied terminal pair; child i commits cut arc i and excludes
    the cut arcs before it, which partitions the remaining solutions.
    Bounds come from completion Dijkstras where chosen arcs ride free.
    """
    n = d.n
    arcs = d.arcs
    w = [d.weight(u, v) for u, v in arcs]
    out_arcs: list[list[int]] = [[] for _ in range(n)]
    for idx, (u, _) in enumerate(arcs):
        out_arcs[u].append(idx)

    def reach_all(src: int, chosen: frozenset[int]) -> set[int]:
        adj: dict[int, list[int]] = {}
        for idx in chosen:
            adj.setdefault(arcs[idx][0], []).append(arcs[idx][1])
        seen = {src}
        stack = [src]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    def completion(src: int, dst: int, chosen: frozenset[int], excluded: frozenset[int]):
        dist: dict[int, Number] = {src: 0}
        pq: list[tuple[Number, int]] = [(0, src)]
        while pq:
            du, u = heapq.heappop(pq)
            if du > dist.get(u, du):
                continue
            if u == dst:
                return du
            for idx in out_arcs[u]:
                if idx in excluded:
                    continue
                v = arcs[idx][1]
                c = du if idx in chosen else du + w[idx]
                if v not in dist or c < dist[v]:
                    dist[v] = c
                    heapq.heappush(pq, (c, v))
        return None

    # initial upper bound: shortest out-tree plus in-tree at the anchor
    def sp_tree(reverse: bool) -> dict[int, int]:
        dist: dict[int, Number] = {mem[0]: 0}
        into: dict[int, int] = {}
        pq: list[tuple[Number, int]] = [(0, mem[0])]
        radj: list[list[int]] = [[] for _ in range(n)]
        for idx, (u, v) in enumerate(arcs):
            radj[v].append(idx)
        rows = radj if reverse else out_arcs
        while pq:
            du, u = heapq.heappop(pq)
            if du > dist.get(u, du):
                continue
            for idx in rows[u]:
                v = arcs[idx][0] if reverse else arcs[idx][1]
                c = du + w[idx]
                if v not in dist or c < dist[v]:
                    dist[v] = c
                    into[v] = idx
                    heapq.heappush(pq, (c, v))
        return into

    fwd = sp_tree(False)
    bwd = sp_tree(True)
    seed: set[int] = set()
    for t in mem[1:]:
        v = t
        while v != mem[0]:
            idx = fwd.get(v)
            if idx is None:
                raise PreconditionError("no path from %d to %d" % (mem[0], t))
            seed.add(idx)
            v = arcs[idx][0]
        v = t
        while v != mem[0]:
            idx = bwd.get(v)
            if idx is None:
                raise PreconditionError("no path from %d to %d" % (t, mem[0]))
            seed.add(idx)
            v = arcs[idx][1]
    best_val: Number = sum(w[i] for i in seed)
    best_set = frozenset(seed)
    nodes = 0

    def dfs(chosen: frozenset[int], excluded: frozenset[int], cw: Number) -> None:
        nonlocal best_val, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceBudgetError(
                "search exceeded the node budget %d" % node_budget
            )
        missing: list[tuple[int, int]] = []
        for s in mem:
            r = reach_all(s, chosen)
            for t in mem:
                if t not in r:
                    missing.append((s, t))
        if not missing:
            if cw < best_val:
                best_val = cw
                best_set = chosen
            return
        extra: Number = 0
        for s, t in missing:
            c = completion(s, t, chosen, excluded)
            if c is None:
                return
            if c > extra:
                extra = c
        if cw + extra >= best_val:
            return
        src = missing[0][0]
        r = reach_all(src, chosen)
        cut = [
            idx
            for idx in range(len(arcs))
            if idx not in chosen
            and idx not in excluded
            and arcs[idx][0] in r
            and arcs[idx][1] not in r
        ]
        banned = set()
        for idx in cut:
            dfs(chosen | {idx}, excluded | banned, cw + w[idx])
            banned.add(idx)

    dfs(frozenset(), frozenset(), 0)
    if not want_witness:
        return normalize_number(best_val), ()
    kept = sorted(best_set)
    for idx in list(kept):
        trial = [i for i in kept if i != idx]
        if _mutually_reachable(d, trial, mem):
            kept = trial
    return normalize_number(best_val), tuple(kept)


def _mutually_reachable(d: Digraph, arc_ids: list[int], mem: tuple[int, ...]) -> bool:
    adj: dict[int, list[int]] = {}
    for idx in arc_ids:
        u, v = d.arcs[idx]
        adj.setdefault(u, []).append(v)
    for s in mem:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if any(t not in seen for t in mem):
            return False
    return True


def _used_subgraph_strong(d: Digraph, arc_ids: tuple[int, ...], mem: tuple[int, ...]) -> bool:
    verts = set(mem)
    for idx in arc_ids:
        u, v = d.arcs[idx]
        verts.add(u)
        verts.add(v)
    if len(verts) <= 1:
        return True
    fwd: dict[int, list[int]] = {}
    rev: dict[int, list[int]] = {}
    for idx in arc_ids:
        u, v = d.arcs[idx]
        fwd.setdefault(u, []).append(v)
        rev.setdefault(v, []).append(u)
    start = min(verts)
    for adj in (fwd, rev):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if verts - seen:
            return False
    return True


def steiner_distance_digraph(
    d: Digraph,
    members,
    strict: bool = False,
    node_budget: int = BB_NODE_BUDGET,
) -> SteinerResult:
    """Minimum arc weight under which the members reach each other.

    Any inclusion-minimal optimal arc set induces a strongly connected
    subgraph on the vertices it touches, so `strict=True` (demanding that
    form) changes nothing about the value; it additionally verifies the
    property on the returned witness. The witness is the search's optimal
    arc set with redundant arcs dropped in ascending order.
    """
    if not d.directed:
        raise PreconditionError("undirected input: use steiner_distance")
    if not d.is_strongly_connected():
        raise PreconditionError("digraph Steiner needs a strongly connected instance")
    mem = vertex_set(members, d.n)
    if len(mem) == 1:
        return SteinerResult(0, ())
    m = apsp(d)
    require_members_reachable(m, mem)
    value, arc_ids = _bb_search(d, mem, node_budget, want_witness=True)
    if strict and not _used_subgraph_strong(d, arc_ids, mem):
        raise AssertionError("minimal witness failed to be strongly connected")
    edges = tuple(d.arcs[i] for i in arc_ids)
    return SteinerResult(value, edges)
