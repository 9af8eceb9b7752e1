"""Shortest closed tours through vertex sets, and their aggregates.

The tour distance of a set S is the length of a shortest closed walk
visiting every vertex of S. It is computed exactly by Held-Karp dynamic
programming over the shortest-path closure, for graphs and digraphs alike.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
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
from .subsets import colex_iter, colex_unrank

# Held-Karp state space is capped at 2^(k-1) * (k-1); beyond this the call is
# refused rather than left to thrash.
HK_MAX_K = 24

# aggregate sweeps refuse to enumerate more than this many subsets
MAX_SUBSETS = 10**8

_CHUNK = 1 << 20


@dataclass(frozen=True)
class TspResult:
    value: Number
    order: tuple[int, ...]


@dataclass(frozen=True)
class EccentricityProfile:
    k: int
    values: tuple[Number, ...]
    witnesses: tuple[tuple[int, ...], ...]
    radius: Number
    diameter: Number


@dataclass(frozen=True)
class EstimateResult:
    mean: Number
    stderr: Number
    samples: int
    seed: int


def _check_k_budget(k: int) -> None:
    if k > HK_MAX_K:
        raise ResourceBudgetError(
            "set size %d exceeds the tour budget HK_MAX_K = %d" % (k, HK_MAX_K)
        )


def _check_subset_budget(n: int, k: int) -> int:
    total = math.comb(n, k)
    if total > MAX_SUBSETS:
        raise ResourceBudgetError(
            "C(%d, %d) = %d subsets exceed the sweep budget MAX_SUBSETS = %d"
            % (n, k, total, MAX_SUBSETS)
        )
    return total


def _hk_value_python(m: DistanceMatrix, mem: tuple[int, ...]) -> Number:
    k = len(mem)
    if k == 1:
        return 0
    anchor = mem[0]
    r = k - 1
    size = 1 << r
    dp: list[list[Number | None]] = [[None] * r for _ in range(size)]
    for i in range(r):
        dp[1 << i][i] = m.get(anchor, mem[i + 1])
    for mask in range(1, size):
        row = dp[mask]
        for last in range(r):
            cur = row[last]
            if cur is None or (mask >> last) & 1 == 0:
                continue
            vlast = mem[last + 1]
            for nxt in range(r):
                if (mask >> nxt) & 1:
                    continue
                cand = cur + m.get(vlast, mem[nxt + 1])
                nm = mask | (1 << nxt)
                old = dp[nm][nxt]
                if old is None or cand < old:
                    dp[nm][nxt] = cand
    full = size - 1
    return min(dp[full][last] + m.get(mem[last + 1], anchor) for last in range(r))


def _suffix_table_python(m: DistanceMatrix, mem: tuple[int, ...]):
    k = len(mem)
    anchor = mem[0]
    r = k - 1
    full = (1 << r) - 1
    h: list[list[Number | None]] = [[None] * r for _ in range(full + 1)]
    for i in range(r):
        h[full][i] = m.get(mem[i + 1], anchor)
    for mask in range(full - 1, 0, -1):
        for i in range(r):
            if (mask >> i) & 1 == 0:
                continue
            vi = mem[i + 1]
            best = None
            for j in range(r):
                if (mask >> j) & 1:
                    continue
                c = m.get(vi, mem[j + 1]) + h[mask | (1 << j)][j]
                if best is None or c < best:
                    best = c
            h[mask][i] = best
    return h


def _greedy_order(m: DistanceMatrix, mem: tuple[int, ...], h) -> tuple[Number, tuple[int, ...]]:
    """Reconstruct the lexicographically smallest optimal tour from h."""
    k = len(mem)
    anchor = mem[0]
    r = k - 1
    best = None
    for i in range(r):
        c = m.get(anchor, mem[i + 1]) + h[1 << i][i]
        if best is None or c < best:
            best = c
    order = [anchor]
    mask = 0
    cur = -1
    target = best
    for _ in range(r):
        src = anchor if cur < 0 else mem[cur + 1]
        for j in range(r):
            if (mask >> j) & 1:
                continue
            c = m.get(src, mem[j + 1]) + h[mask | (1 << j)][j]
            if c == target:
                order.append(mem[j + 1])
                mask |= 1 << j
                target = h[mask][j]
                cur = j
                break
        else:  # pragma: no cover - the table always admits a continuation
            raise AssertionError("tour reconstruction lost the optimum")
    return normalize_number(best), tuple(order)


class _IntMatrixView:
    """Adapter so the greedy reconstruction can read kernel outputs."""

    __slots__ = ("_mat",)

    def __init__(self, mat):
        self._mat = mat

    def get(self, u: int, v: int) -> int:
        return int(self._mat[u, v])


def tour_value(m: DistanceMatrix, members: tuple[int, ...]) -> Number:
    """Tour distance of a member tuple over a precomputed metric."""
    k = len(members)
    if k == 1:
        return 0
    _check_k_budget(k)
    require_members_reachable(m, members)
    if m.int_matrix is not None:
        mem = np.array(members, dtype=np.int64)
        return int(_fast.hk_tsp_set(m.int_matrix, mem))
    return normalize_number(_hk_value_python(m, members))


def tsp_distance(m: DistanceMatrix, members) -> TspResult:
    """Shortest closed walk through `members`, with a witnessing order.

    Works on a precomputed distance matrix (symmetric or not). The order is
    the lexicographically smallest optimal tour, written starting from the
    smallest member. Any set with one vertex has tour distance 0.
    """
    mem = vertex_set(members, m.n)
    k = len(mem)
    if k == 1:
        return TspResult(0, mem)
    _check_k_budget(k)
    require_members_reachable(m, mem)
    if m.int_matrix is not None:
        h = _fast.hk_suffix_table(m.int_matrix, np.array(mem, dtype=np.int64), k)
        value, order = _greedy_order(_IntMatrixView(m.int_matrix), mem, h)
        return TspResult(int(value), order)
    h = _suffix_table_python(m, mem)
    value, order = _greedy_order(m, mem, h)
    return TspResult(value, order)


def _int_sweep_sum(mat: np.ndarray, n: int, k: int, total: int, threads: int) -> int:
    md = int(mat.max())
    chunk = _CHUNK
    if md > 0:
        chunk = max(1, min(chunk, (1 << 62) // (k * md)))
    B = _fast.binom_table(n, k)
    ranges = [(r0, min(r0 + chunk, total)) for r0 in range(0, total, chunk)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            sums = ex.map(
                lambda rr: int(_fast.hk_tsp_range(mat, k, rr[0], rr[1], B).sum()), ranges
            )
            return sum(sums)
    acc = 0
    for r0, r1 in ranges:
        acc += int(_fast.hk_tsp_range(mat, k, r0, r1, B).sum())
    return acc


def _aggregate_preconditions(g: Graph | Digraph, k: int) -> DistanceMatrix:
    if not (2 <= k <= g.n):
        raise PreconditionError("k = %d out of range 2..%d" % (k, g.n))
    _check_k_budget(k)
    m = apsp(g)
    if not m.all_finite:
        kind = "strongly connected" if g.directed else "connected"
        raise PreconditionError("tour aggregates need a %s instance" % kind)
    return m


def tsp_wiener(g: Graph | Digraph, k: int, threads: int = 1) -> Number:
    """Sum of tour distances over all k-subsets of the vertex set."""
    m = _aggregate_preconditions(g, k)
    total = _check_subset_budget(g.n, k)
    if m.int_matrix is not None:
        return _int_sweep_sum(m.int_matrix, g.n, k, total, threads)
    acc = Fraction(0)
    for mem in colex_iter(g.n, k):
        acc += _hk_value_python(m, mem)
    return normalize_number(acc)


def tsp_mean(g: Graph | Digraph, k: int, threads: int = 1) -> Number:
    """Average tour distance over all k-subsets."""
    return normalize_number(
        Fraction(tsp_wiener(g, k, threads=threads), math.comb(g.n, k))
    )


def tsp_eccentricity(g: Graph | Digraph, k: int) -> EccentricityProfile:
    """Per-vertex max tour distance over k-sets containing the vertex.

    Witnesses are the first maximizing sets in colex order; radius and
    diameter are the min and max over vertices.
    """
    m = _aggregate_preconditions(g, k)
    _check_subset_budget(g.n, k)
    n = g.n
    if m.int_matrix is not None:
        B = _fast.binom_table(n, k)
        ecc, wit = _fast.tsp_ecc_kernel(m.int_matrix, k, B)
        values = tuple(int(e) for e in ecc)
        witnesses = tuple(colex_unrank(int(r), k, n) for r in wit)
    else:
        vals: list[Number | None] = [None] * n
        wits: list[tuple[int, ...] | None] = [None] * n
        for mem in colex_iter(n, k):
            val = _hk_value_python(m, mem)
            for v in mem:
                if vals[v] is None or val > vals[v]:
                    vals[v] = val
                    wits[v] = mem
        values = tuple(normalize_number(v) for v in vals)
        witnesses = tuple(wits)
    return EccentricityProfile(
        k=k,
        values=values,
        witnesses=witnesses,
        radius=min(values),
        diameter=max(values),
    )


def _python_floyd_members(draws_row, n: int, k: int) -> tuple[int, ...]:
    chosen: set[int] = set()
    for c in range(k):
        j = n - k + c
        t = int(draws_row[c])
        if t in chosen:
            chosen.add(j)
        else:
            chosen.add(t)
    return tuple(sorted(chosen))


def tsp_mean_estimate(
    g: Graph | Digraph, k: int, samples: int, seed: int
) -> EstimateResult:
    """Monte Carlo estimate of the average tour distance.

    Subsets are drawn uniformly by Floyd's algorithm from a seeded MT19937
    stream, so a (graph, k, samples, seed) quadruple always visits the same
    sets. The standard error is the usual s/sqrt(N); its square root is
    taken in floating point and recorded as an exact rational snapshot of
    that value.
    """
    m = _aggregate_preconditions(g, k)
    if samples < 1:
        raise PreconditionError("need at least 1 sample, got %d" % samples)
    draws = _fast.floyd_draws(g.n, k, samples, seed)
    if m.int_matrix is not None:
        vals = _fast.sample_tsp_values(m.int_matrix, draws, k)
        values: list[Number] = [int(v) for v in vals]
    else:
        values = [
            _hk_value_python(m, _python_floyd_members(draws[s], g.n, k))
            for s in range(samples)
        ]
    mean = Fraction(sum(values), samples)
    if samples == 1:
        var = Fraction(0)
    else:
        var = sum((Fraction(v) - mean) ** 2 for v in values) / (samples - 1)
    stderr = Fraction(math.sqrt(float(var / samples))) if var else Fraction(0)
    return EstimateResult(
        mean=normalize_number(mean),
        stderr=normalize_number(stderr),
        samples=samples,
        seed=seed,
    )
