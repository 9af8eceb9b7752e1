"""Integer fast paths (numba kernels) behind the exact public API.

Every kernel here mirrors a pure-Python exact routine elsewhere in the
package and is only engaged when all inputs are integers, so results are
bit-identical to the Fraction paths. Subsets of size k are enumerated in
colexicographic order, which coincides with ascending characteristic
bitmask; ranks returned by kernels refer to that order.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numba import njit

INF = 1 << 60


def binom_table(n: int, k: int) -> np.ndarray:
    """B[i, j] = C(i, j) as int64, for 0 <= i <= n, 0 <= j <= k."""
    B = np.zeros((n + 1, k + 2), dtype=np.int64)
    for i in range(n + 1):
        for j in range(min(i, k + 1) + 1):
            B[i, j] = math.comb(i, j)
    return B


def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    pu, pv = [], []
    for u in range(n):
        for v in range(u + 1, n):
            pu.append(u)
            pv.append(v)
    return np.array(pu, dtype=np.int64), np.array(pv, dtype=np.int64)


# ---------------------------------------------------------------------------
# subset enumeration (colex)


@njit(cache=True, nogil=True)
def _unrank_colex(r, k, B, c):
    """Write the rank-r k-subset (colex order) into c."""
    rem = r
    for i in range(k - 1, -1, -1):
        v = i
        while B[v + 1, i + 1] <= rem:
            v += 1
        c[i] = v
        rem -= B[v, i + 1]


@njit(cache=True, nogil=True)
def _next_colex(c, k, n):
    """Advance c to the next k-subset of 0..n-1; False when exhausted."""
    i = 0
    while i + 1 < k and c[i] + 1 == c[i + 1]:
        c[i] = i
        i += 1
    c[i] += 1
    if i == k - 1 and c[i] >= n:
        return False
    return True


# ---------------------------------------------------------------------------
# distances


@njit(cache=True, nogil=True)
def _fill_dist_from_adjbits(n, adjbits, out):
    for s in range(n):
        for t in range(n):
            out[s, t] = -1
        out[s, s] = 0
        reached = 1 << s
        frontier = 1 << s
        d = 0
        while frontier != 0:
            d += 1
            nxt = 0
            for v in range(n):
                if (frontier >> v) & 1:
                    nxt |= adjbits[v]
            nxt &= ~reached
            for v in range(n):
                if (nxt >> v) & 1:
                    out[s, v] = d
            reached |= nxt
            frontier = nxt


@njit(cache=True, nogil=True)
def _adjbits_from_mask(n, mask, pu, pv, adjbits):
    for v in range(n):
        adjbits[v] = 0
    p = pu.shape[0]
    for i in range(p):
        if (mask >> i) & 1:
            u = pu[i]
            v = pv[i]
            adjbits[u] |= 1 << v
            adjbits[v] |= 1 << u


@njit(cache=True, nogil=True)
def bfs_apsp_csr(n, indptr, nbrs):
    """Unweighted APSP over a CSR adjacency; -1 marks unreachable."""
    out = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        out[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = out[s, u]
            for idx in range(indptr[u], indptr[u + 1]):
                w = nbrs[idx]
                if out[s, w] < 0:
                    out[s, w] = du + 1
                    queue[tail] = w
                    tail += 1
    return out


@njit(cache=True, nogil=True)
def dijkstra_apsp_int(wmat):
    """APSP for nonnegative integer arc weights; wmat[u,v] = -1 means no arc."""
    n = wmat.shape[0]
    out = np.full((n, n), -1, dtype=np.int64)
    distv = np.empty(n, dtype=np.int64)
    done = np.empty(n, dtype=np.uint8)
    for s in range(n):
        for v in range(n):
            distv[v] = INF
            done[v] = 0
        distv[s] = 0
        for _ in range(n):
            u = -1
            best = INF
            for v in range(n):
                if done[v] == 0 and distv[v] < best:
                    best = distv[v]
                    u = v
            if u < 0:
                break
            done[u] = 1
            du = distv[u]
            for v in range(n):
                w = wmat[u, v]
                if w >= 0 and du + w < distv[v]:
                    distv[v] = du + w
        for v in range(n):
            if distv[v] < INF:
                out[s, v] = distv[v]
    return out


# ---------------------------------------------------------------------------
# connected enumeration


@njit(cache=True, nogil=True)
def _connected_masks_impl(n, pu, pv):
    p = pu.shape[0]
    total = 1 << p
    out = np.empty(total, dtype=np.int64)
    adjbits = np.empty(n, dtype=np.int64)
    full = (1 << n) - 1
    count = 0
    for mask in range(total):
        bits = 0
        t = mask
        while t != 0:
            t &= t - 1
            bits += 1
        if bits < n - 1:
            continue
        _adjbits_from_mask(n, mask, pu, pv, adjbits)
        reach = 1
        while True:
            nxt = reach
            for v in range(n):
                if (reach >> v) & 1:
                    nxt |= adjbits[v]
            if nxt == reach:
                break
            reach = nxt
        if reach == full:
            out[count] = mask
            count += 1
    return out[:count].copy()


@lru_cache(maxsize=None)
def connected_edge_masks(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    pu, pv = pair_arrays(n)
    return _connected_masks_impl(n, pu, pv)


# ---------------------------------------------------------------------------
# Held-Karp over the metric closure


@njit(cache=True, nogil=True)
def _hk_from_dist(dist, mem, k, dp):
    """Shortest closed tour cost over the k vertices in mem (sorted)."""
    if k == 1:
        return 0
    anchor = mem[0]
    r = k - 1
    full = (1 << r) - 1
    for mask in range(full + 1):
        for i in range(r):
            dp[mask, i] = -1
    for i in range(r):
        dp[1 << i, i] = dist[anchor, mem[i + 1]]
    for mask in range(1, full + 1):
        for last in range(r):
            if (mask >> last) & 1 == 0:
                continue
            cur = dp[mask, last]
            if cur < 0:
                continue
            vlast = mem[last + 1]
            for nxt in range(r):
                if (mask >> nxt) & 1:
                    continue
                cand = cur + dist[vlast, mem[nxt + 1]]
                nm = mask | (1 << nxt)
                if dp[nm, nxt] < 0 or cand < dp[nm, nxt]:
                    dp[nm, nxt] = cand
    best = -1
    for last in range(r):
        if dp[full, last] < 0:
            continue
        v = dp[full, last] + dist[mem[last + 1], anchor]
        if best < 0 or v < best:
            best = v
    return best


@njit(cache=True, nogil=True)
def hk_suffix_table(dist, mem, k):
    """h[mask, i] = cheapest continuation from mem[i+1] back to the anchor.

    mask is the set of already-visited non-anchor indices including i; the
    continuation covers everything outside mask. Greedy reconstruction over
    this table yields the lexicographically smallest optimal tour.
    """
    anchor = mem[0]
    r = k - 1
    full = (1 << r) - 1
    h = np.full((full + 1, r), -1, dtype=np.int64)
    for i in range(r):
        h[full, i] = dist[mem[i + 1], anchor]
    for mask in range(full - 1, 0, -1):
        for i in range(r):
            if (mask >> i) & 1 == 0:
                continue
            vi = mem[i + 1]
            best = -1
            for j in range(r):
                if (mask >> j) & 1:
                    continue
                c = dist[vi, mem[j + 1]] + h[mask | (1 << j), j]
                if best < 0 or c < best:
                    best = c
            h[mask, i] = best
    return h


@njit(cache=True, nogil=True)
def hk_tsp_set(dist, mem):
    k = mem.shape[0]
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    return _hk_from_dist(dist, mem, k, dp)


@njit(cache=True, nogil=True)
def hk_tsp_range(dist, k, r0, r1, B):
    """Tour values for k-subsets with colex ranks in [r0, r1)."""
    n = dist.shape[0]
    out = np.empty(r1 - r0, dtype=np.int64)
    c = np.empty(k, dtype=np.int64)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    _unrank_colex(r0, k, B, c)
    for pos in range(r1 - r0):
        out[pos] = _hk_from_dist(dist, c, k, dp)
        if pos + 1 < r1 - r0:
            _next_colex(c, k, n)
    return out


@njit(cache=True, nogil=True)
def tsp_ecc_kernel(dist, k, B):
    """Per-vertex max tour value over k-sets containing the vertex.

    Returns (ecc, witness_rank); the witness is the first (colex) k-set
    attaining the maximum for that vertex.
    """
    n = dist.shape[0]
    ecc = np.full(n, -1, dtype=np.int64)
    wit = np.full(n, -1, dtype=np.int64)
    c = np.empty(k, dtype=np.int64)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    total = B[n, k]
    _unrank_colex(0, k, B, c)
    for rank in range(total):
        val = _hk_from_dist(dist, c, k, dp)
        for i in range(k):
            v = c[i]
            if val > ecc[v]:
                ecc[v] = val
                wit[v] = rank
        if rank + 1 < total:
            _next_colex(c, k, n)
    return ecc, wit


# ---------------------------------------------------------------------------
# Steiner (Dreyfus-Wagner over the full subset lattice)


@njit(cache=True, nogil=True)
def steiner_lattice(dist):
    """st[S] = Steiner distance of the vertex set S (bitmask), 0 for |S| <= 1.

    dp[T, v] = cheapest connected subgraph weight containing T's vertices and
    v; merge over submask partitions, then one metric-closure relax pass
    (sufficient because dist obeys the triangle inequality).
    """
    n = dist.shape[0]
    size = 1 << n
    dp = np.full((size, n), INF, dtype=np.int64)
    for t in range(n):
        for v in range(n):
            dp[1 << t, v] = dist[t, v]
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        low = mask & (-mask)
        sub = (mask - 1) & mask
        while sub != 0:
            if sub & low:
                other = mask ^ sub
                for v in range(n):
                    c = dp[sub, v] + dp[other, v]
                    if c < dp[mask, v]:
                        dp[mask, v] = c
            sub = (sub - 1) & mask
        for v in range(n):
            best = dp[mask, v]
            for u in range(n):
                c = dp[mask, u] + dist[u, v]
                if c < best:
                    best = c
            dp[mask, v] = best
    st = np.zeros(size, dtype=np.int64)
    for mask in range(size):
        if mask & (mask - 1) == 0:
            continue
        low = mask & (-mask)
        lv = 0
        t = low
        while t > 1:
            t >>= 1
            lv += 1
        st[mask] = dp[mask ^ low, lv]
    return st


@njit(cache=True, nogil=True)
def _dw_terms(dist, terms, k, dp):
    """Minimum connected-subgraph weight spanning the k terminal vertices.

    dp is (1 << k, n) int64 scratch; subsets range over terminal indices.
    """
    n = dist.shape[0]
    if k <= 1:
        return 0
    size = 1 << k
    for mask in range(size):
        for v in range(n):
            dp[mask, v] = INF
    for i in range(k):
        t = terms[i]
        for v in range(n):
            dp[1 << i, v] = dist[t, v]
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        low = mask & (-mask)
        sub = (mask - 1) & mask
        while sub != 0:
            if sub & low:
                other = mask ^ sub
                for v in range(n):
                    c = dp[sub, v] + dp[other, v]
                    if c < dp[mask, v]:
                        dp[mask, v] = c
            sub = (sub - 1) & mask
        for v in range(n):
            best = dp[mask, v]
            for u in range(n):
                c = dp[mask, u] + dist[u, v]
                if c < best:
                    best = c
            dp[mask, v] = best
    return dp[size - 2, terms[0]]


@njit(cache=True, nogil=True)
def dw_terms_set(dist, terms):
    k = terms.shape[0]
    dp = np.empty((1 << k, dist.shape[0]), dtype=np.int64)
    return _dw_terms(dist, terms, k, dp)


@njit(cache=True, nogil=True)
def dw_terms_range(dist, k, r0, r1, B):
    """Steiner values for k-subsets with colex ranks in [r0, r1)."""
    n = dist.shape[0]
    out = np.empty(r1 - r0, dtype=np.int64)
    c = np.empty(k, dtype=np.int64)
    dp = np.empty((1 << k, n), dtype=np.int64)
    _unrank_colex(r0, k, B, c)
    for pos in range(r1 - r0):
        out[pos] = _dw_terms(dist, c, k, dp)
        if pos + 1 < r1 - r0:
            _next_colex(c, k, n)
    return out


# ---------------------------------------------------------------------------
# induced Hamiltonicity


@njit(cache=True, nogil=True)
def _ham_subset(adjbits, c, k, table):
    """True if the induced subgraph on c has a spanning cycle (k>=3) or edge (k=2)."""
    if k == 1:
        return True
    if k == 2:
        return (adjbits[c[0]] >> c[1]) & 1 == 1
    full = (1 << k) - 1
    for i in range(full + 1):
        table[i] = 0
    table[1] = 1
    for mask in range(1, full + 1):
        lasts = table[mask]
        if lasts == 0:
            continue
        for last in range(k):
            if (lasts >> last) & 1 == 0:
                continue
            vlast = c[last]
            for nxt in range(1, k):
                if (mask >> nxt) & 1:
                    continue
                if (adjbits[vlast] >> c[nxt]) & 1:
                    table[mask | (1 << nxt)] |= 1 << nxt
    lasts = table[full]
    for last in range(1, k):
        if (lasts >> last) & 1 and (adjbits[c[last]] >> c[0]) & 1:
            return True
    return False


@njit(cache=True, nogil=True)
def ham_all_flag(n, adjbits, k, B):
    """(all k-sets Hamiltonian?, colex rank of first failure or -1)."""
    c = np.empty(k, dtype=np.int64)
    table = np.empty(1 << k, dtype=np.int64)
    total = B[n, k]
    _unrank_colex(0, k, B, c)
    for rank in range(total):
        if not _ham_subset(adjbits, c, k, table):
            return False, rank
        if rank + 1 < total:
            _next_colex(c, k, n)
    return True, -1


# ---------------------------------------------------------------------------
# fused per-graph statistics (exhaustive scans)

# columns of k_stats / scan_graph_stats rows:
KS_WTSPK = 0     # sum of tour values over all k-sets
KS_WK = 1        # sum of Steiner values over all k-sets
KS_VIOL = 2      # count of sets with tsp > 2 * steiner
KS_EQ = 3        # count of sets with tsp == 2 * steiner
KS_ALLHAM = 4    # 1 iff every k-set induces a Hamiltonian subgraph
KS_IFFBAD = 5    # count of sets where (tsp == k) disagrees with Hamiltonicity
KS_MAXTSP = 6    # max tour value over all k-sets
KS_LOWVIOL = 7   # count of sets with tsp < steiner (sandwich lower bound)
KS_COLS = 8


@njit(cache=True, nogil=True)
def k_stats(dist, adjbits, k, B, st):
    n = dist.shape[0]
    out = np.zeros(KS_COLS, dtype=np.int64)
    out[KS_ALLHAM] = 1
    c = np.empty(k, dtype=np.int64)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    table = np.empty(1 << k, dtype=np.int64)
    total = B[n, k]
    _unrank_colex(0, k, B, c)
    for rank in range(total):
        tsp = _hk_from_dist(dist, c, k, dp)
        smask = 0
        for i in range(k):
            smask |= 1 << c[i]
        sv = st[smask]
        out[KS_WTSPK] += tsp
        out[KS_WK] += sv
        if tsp > 2 * sv:
            out[KS_VIOL] += 1
        if tsp == 2 * sv:
            out[KS_EQ] += 1
        if tsp < sv:
            out[KS_LOWVIOL] += 1
        ham = _ham_subset(adjbits, c, k, table)
        if not ham:
            out[KS_ALLHAM] = 0
        if (tsp == k) != ham:
            out[KS_IFFBAD] += 1
        if tsp > out[KS_MAXTSP]:
            out[KS_MAXTSP] = tsp
        if rank + 1 < total:
            _next_colex(c, k, n)
    return out


@njit(cache=True, nogil=True)
def scan_graph_stats(n, mask, pu, pv, B):
    """All k_stats rows (k = 2..n) for the graph given by an edge bitmask."""
    adjbits = np.empty(n, dtype=np.int64)
    _adjbits_from_mask(n, mask, pu, pv, adjbits)
    dist = np.empty((n, n), dtype=np.int64)
    _fill_dist_from_adjbits(n, adjbits, dist)
    st = steiner_lattice(dist)
    out = np.zeros((n + 1, KS_COLS), dtype=np.int64)
    for k in range(2, n + 1):
        out[k] = k_stats(dist, adjbits, k, B, st)
    return out


# columns of bounds_stats (tour-only sweep, no Steiner lattice needed):
BS_WTSPK = 0     # sum of tour values over all k-sets
BS_ALLHAM = 1    # 1 iff every k-set induces a Hamiltonian subgraph
BS_IFFBAD = 2    # count of sets where (tsp == k) disagrees with Hamiltonicity
BS_MAXTSP = 3
BS_COLS = 4


@njit(cache=True, nogil=True)
def bounds_stats(dist, adjbits, k, B):
    """Tour sum plus Hamiltonicity cross-checks over every k-set.

    Works for any order since it never builds the subset lattice; the
    Hamiltonicity columns assume unit weights (tsp == k is only meaningful
    there).
    """
    n = dist.shape[0]
    out = np.zeros(BS_COLS, dtype=np.int64)
    out[BS_ALLHAM] = 1
    c = np.empty(k, dtype=np.int64)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    table = np.empty(1 << k, dtype=np.int64)
    total = B[n, k]
    _unrank_colex(0, k, B, c)
    for rank in range(total):
        tsp = _hk_from_dist(dist, c, k, dp)
        out[BS_WTSPK] += tsp
        ham = _ham_subset(adjbits, c, k, table)
        if not ham:
            out[BS_ALLHAM] = 0
        if (tsp == k) != ham:
            out[BS_IFFBAD] += 1
        if tsp > out[BS_MAXTSP]:
            out[BS_MAXTSP] = tsp
        if rank + 1 < total:
            _next_colex(c, k, n)
    return out


@njit(cache=True, nogil=True)
def scan_masks_stats(n, masks, pu, pv, B):
    """k_stats rows for every k plus violating-triple counts, per edge mask.

    Returns (rows, tri) with rows[i, k] the k_stats row of masks[i] and
    tri[i] its number of violating triples. Meant to be called on chunks;
    rows grows as len(masks) * (n+1) * KS_COLS.
    """
    cnt = masks.shape[0]
    rows = np.zeros((cnt, n + 1, KS_COLS), dtype=np.int64)
    tri = np.zeros(cnt, dtype=np.int64)
    adjbits = np.empty(n, dtype=np.int64)
    dist = np.empty((n, n), dtype=np.int64)
    for i in range(cnt):
        _adjbits_from_mask(n, masks[i], pu, pv, adjbits)
        _fill_dist_from_adjbits(n, adjbits, dist)
        st = steiner_lattice(dist)
        for kk in range(2, n + 1):
            rows[i, kk] = k_stats(dist, adjbits, kk, B, st)
        if n >= 3:
            tri[i] = count_violating_triples(dist, masks[i], pu, pv)
    return rows, tri


# ---------------------------------------------------------------------------
# batch kernels over many edge masks (oracle-comparison sweeps)


@njit(cache=True, nogil=True)
def hk_batch_masks(n, masks, k, pu, pv, B):
    """Tour values for every k-set of every mask; shape (len(masks), C(n,k))."""
    total = B[n, k]
    G = masks.shape[0]
    out = np.empty((G, total), dtype=np.int64)
    adjbits = np.empty(n, dtype=np.int64)
    dist = np.empty((n, n), dtype=np.int64)
    c = np.empty(k, dtype=np.int64)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    for g in range(G):
        _adjbits_from_mask(n, masks[g], pu, pv, adjbits)
        _fill_dist_from_adjbits(n, adjbits, dist)
        _unrank_colex(0, k, B, c)
        for rank in range(total):
            out[g, rank] = _hk_from_dist(dist, c, k, dp)
            if rank + 1 < total:
                _next_colex(c, k, n)
    return out


@njit(cache=True, nogil=True)
def steiner_batch_masks(n, masks, k, pu, pv, B):
    """Steiner values for every k-set of every mask; shape (len(masks), C(n,k))."""
    total = B[n, k]
    G = masks.shape[0]
    out = np.empty((G, total), dtype=np.int64)
    adjbits = np.empty(n, dtype=np.int64)
    dist = np.empty((n, n), dtype=np.int64)
    c = np.empty(k, dtype=np.int64)
    for g in range(G):
        _adjbits_from_mask(n, masks[g], pu, pv, adjbits)
        _fill_dist_from_adjbits(n, adjbits, dist)
        st = steiner_lattice(dist)
        _unrank_colex(0, k, B, c)
        for rank in range(total):
            smask = 0
            for i in range(k):
                smask |= 1 << c[i]
            out[g, rank] = st[smask]
            if rank + 1 < total:
                _next_colex(c, k, n)
    return out


@njit(cache=True, nogil=True)
def count_violating_triples(dist, gmask, pu, pv):
    """Triples (u,v,w) with 2*max < perimeter whose three shortest-path edge
    sets are pairwise disjoint (unweighted graphs given by an edge bitmask).

    An edge lies on some shortest a-b path exactly when it tightens the
    distance in one orientation, so pairwise disjointness of all path
    choices reduces to emptiness of the usable-edge-set intersections.
    """
    n = dist.shape[0]
    p = pu.shape[0]
    um = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            dab = dist[a, b]
            mask = 0
            for i in range(p):
                if (gmask >> i) & 1 == 0:
                    continue
                x = pu[i]
                y = pv[i]
                if dist[a, x] + 1 + dist[y, b] == dab or dist[a, y] + 1 + dist[x, b] == dab:
                    mask |= 1 << i
            um[a, b] = mask
            um[b, a] = mask
    cnt = 0
    for u in range(n):
        for v in range(u + 1, n):
            for w in range(v + 1, n):
                d1 = dist[u, v]
                d2 = dist[u, w]
                d3 = dist[v, w]
                mx = d1
                if d2 > mx:
                    mx = d2
                if d3 > mx:
                    mx = d3
                if 2 * mx < d1 + d2 + d3:
                    if (
                        um[u, v] & um[u, w] == 0
                        and um[u, v] & um[v, w] == 0
                        and um[u, w] & um[v, w] == 0
                    ):
                        cnt += 1
    return cnt


# ---------------------------------------------------------------------------
# trees: cyclic DFS-order distance sums


@njit(cache=True, nogil=True)
def tree_tsp_sum_range(dist, tinpos, k, r0, r1, B):
    """Sum over colex ranks [r0, r1) of the closed-tour value on a tree.

    On a tree the optimal closed walk through a set doubles each edge of the
    spanned subtree, and that equals the cyclic sum of distances between
    consecutive members in DFS discovery order.
    """
    n = dist.shape[0]
    c = np.empty(k, dtype=np.int64)
    order = np.empty(k, dtype=np.int64)
    _unrank_colex(r0, k, B, c)
    acc = 0
    for pos in range(r1 - r0):
        for i in range(k):
            order[i] = c[i]
        # insertion sort by DFS position
        for i in range(1, k):
            key = order[i]
            kp = tinpos[key]
            j = i - 1
            while j >= 0 and tinpos[order[j]] > kp:
                order[j + 1] = order[j]
                j -= 1
            order[j + 1] = key
        s = dist[order[k - 1], order[0]]
        for i in range(k - 1):
            s += dist[order[i], order[i + 1]]
        acc += s
        if pos + 1 < r1 - r0:
            _next_colex(c, k, n)
    return acc


# ---------------------------------------------------------------------------
# seeded subset sampling (Floyd's algorithm over pregenerated draws)


@njit(cache=True, nogil=True)
def sample_tsp_values(dist, draws, k):
    """Tour value per sampled k-set; draws[s, c] uniform on [0, n-k+c]."""
    n = dist.shape[0]
    S = draws.shape[0]
    out = np.empty(S, dtype=np.int64)
    mem = np.empty(k, dtype=np.int64)
    used = np.zeros(n, dtype=np.uint8)
    r = k - 1 if k > 1 else 1
    dp = np.empty((1 << r, r), dtype=np.int64)
    for s in range(S):
        for c in range(k):
            j = n - k + c
            t = draws[s, c]
            if used[t]:
                mem[c] = j
                used[j] = 1
            else:
                mem[c] = t
                used[t] = 1
        # insertion sort
        for i in range(1, k):
            key = mem[i]
            j = i - 1
            while j >= 0 and mem[j] > key:
                mem[j + 1] = mem[j]
                j -= 1
            mem[j + 1] = key
        out[s] = _hk_from_dist(dist, mem, k, dp)
        for i in range(k):
            used[mem[i]] = 0
    return out


def floyd_draws(n: int, k: int, samples: int, seed: int) -> np.ndarray:
    """Pregenerated draw matrix for Floyd's k-subset sampling (MT19937).

    Column c is uniform on [0, n-k+c]; the pure-Python and kernel samplers
    both consume this matrix, so they visit identical subsets.
    """
    rs = np.random.RandomState(seed)
    draws = np.empty((samples, k), dtype=np.int64)
    for c in range(k):
        draws[:, c] = rs.randint(0, n - k + c + 1, size=samples, dtype=np.int64)
    return draws
