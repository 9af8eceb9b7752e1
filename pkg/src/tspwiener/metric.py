"""Shortest-path metrics and the classical distance aggregates built on them."""

from __future__ import annotations

import heapq
from fractions import Fraction

import numpy as np

from . import _fast
from .errors import PreconditionError
from .graphs import Digraph, Graph

Number = int | Fraction

# integer weights above this take the exact Fraction path to keep the int64
# kernels far away from overflow
_INT_PATH_MAX = 1 << 31


def normalize_number(x: Number) -> Number:
    """Collapse integral Fractions to plain int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class DistanceMatrix:
    """Exact pairwise shortest-path distances.

    Integer instances are backed by an int64 matrix with -1 marking
    unreachable pairs; rational weights fall back to Fraction rows holding
    None instead. `directed` records that the matrix may be asymmetric.
    """

    __slots__ = ("n", "directed", "_mat", "_rows")

    def __init__(self, n: int, directed: bool, mat=None, rows=None):
        if (mat is None) == (rows is None):
            raise ValueError("exactly one backing store expected")
        self.n = n
        self.directed = directed
        self._mat = mat
        self._rows = rows

    @property
    def symmetric(self) -> bool:
        return not self.directed

    @property
    def int_matrix(self) -> np.ndarray | None:
        """int64 backing matrix, or None when entries are not integers."""
        return self._mat

    def finite(self, u: int, v: int) -> bool:
        if self._mat is not None:
            return bool(self._mat[u, v] >= 0)
        return self._rows[u][v] is not None

    @property
    def all_finite(self) -> bool:
        if self._mat is not None:
            return bool((self._mat >= 0).all())
        return all(d is not None for row in self._rows for d in row)

    def get(self, u: int, v: int) -> Number:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise PreconditionError(
                "vertex pair (%d, %d) out of range for order %d" % (u, v, self.n)
            )
        if self._mat is not None:
            d = int(self._mat[u, v])
            if d < 0:
                raise PreconditionError("no path from %d to %d" % (u, v))
            return d
        d = self._rows[u][v]
        if d is None:
            raise PreconditionError("no path from %d to %d" % (u, v))
        return normalize_number(d)


def require_members_reachable(m: DistanceMatrix, members: tuple[int, ...]) -> None:
    """Raise unless every ordered pair of members is connected."""
    for u in members:
        for v in members:
            if u != v and not m.finite(u, v):
                raise PreconditionError("no path from %d to %d" % (u, v))


def _csr(g: Graph | Digraph) -> tuple[np.ndarray, np.ndarray]:
    adj = g.out_adjacency if g.directed else g.adjacency
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    nbrs = []
    for v in range(g.n):
        nbrs.extend(adj[v])
        indptr[v + 1] = len(nbrs)
    return indptr, np.array(nbrs, dtype=np.int64) if nbrs else np.zeros(0, dtype=np.int64)


def apsp(g: Graph | Digraph) -> DistanceMatrix:
    """All-pairs shortest paths: BFS when unweighted, Dijkstra otherwise."""
    n = g.n
    if not g.weighted:
        indptr, nbrs = _csr(g)
        return DistanceMatrix(n, g.directed, mat=_fast.bfs_apsp_csr(n, indptr, nbrs))
    items = list(g.weights.items())
    if all(isinstance(w, int) and w <= _INT_PATH_MAX for _, w in items):
        wmat = np.full((n, n), -1, dtype=np.int64)
        for (u, v), w in items:
            wmat[u, v] = w
            if not g.directed:
                wmat[v, u] = w
        return DistanceMatrix(n, g.directed, mat=_fast.dijkstra_apsp_int(wmat))
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for (u, v), w in items:
        fw = Fraction(w)
        adj[u].append((v, fw))
        if not g.directed:
            adj[v].append((u, fw))
    rows = []
    zero = Fraction(0)
    for s in range(n):
        dist: list[Fraction | None] = [None] * n
        dist[s] = zero
        pq = [(zero, s)]
        while pq:
            d, u = heapq.heappop(pq)
            if d != dist[u]:
                continue
            for v, w in adj[u]:
                nd = d + w
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(pq, (nd, v))
        rows.append(dist)
    return DistanceMatrix(n, g.directed, rows=rows)


def wiener(m: DistanceMatrix) -> Number:
    """Sum of distances over unordered pairs (ordered pairs when directed).

    Requires every pair to be reachable; for directed input that means
    strong connectivity.
    """
    if not m.all_finite:
        kind = "strongly connected" if m.directed else "connected"
        raise PreconditionError("wiener index needs a %s instance" % kind)
    if m._mat is not None:
        total = int(m._mat.sum())
        return total if m.directed else total // 2
    total = Fraction(0)
    for u in range(m.n):
        row = m._rows[u]
        for v in range(m.n):
            if m.directed or u < v:
                if u != v:
                    total += row[v]
    return normalize_number(total)


def mean_distance(m: DistanceMatrix) -> Number:
    """Wiener index divided by the pair count.

    Directed instances average over all n(n-1) ordered pairs, so the value
    is not comparable with the undirected mean of the underlying graph.
    """
    if m.n < 2:
        raise PreconditionError("mean distance needs at least two vertices")
    pairs = m.n * (m.n - 1)
    if not m.directed:
        pairs //= 2
    return normalize_number(Fraction(wiener(m), pairs))
