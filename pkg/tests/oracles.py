"""Independent reference implementations the fast code is checked against.

Everything here is written from the definitions, sharing no code path with
the package: tour values by trying every permutation and by searching the
walk state space directly on the input graph, Steiner values by enumerating
vertex supersets and arc subsets. Slow on purpose.
"""

from fractions import Fraction
from heapq import heappop, heappush
from itertools import combinations, permutations

INF = Fraction(10**12)


def perm_tsp(m, members):
    """Shortest closed tour through `members`: try every visiting order.

    Works on the metric closure `m` (a DistanceMatrix), so it checks the
    dynamic program but not the closure itself.
    """
    members = tuple(members)
    if len(members) == 1:
        return 0
    best = None
    for order in permutations(members):
        total = sum(m.get(order[i - 1], order[i]) for i in range(len(order)))
        if best is None or total < best:
            best = total
    return best


def walk_tsp(g, members):
    """Shortest closed walk through `members`, found on the graph itself.

    Dijkstra over states (current vertex, subset of members already seen),
    with no shortest-path preprocessing: the only inputs are the adjacency
    lists and the definition of a closed walk.
    """
    members = tuple(sorted(members))
    if len(members) == 1:
        return 0
    index = {v: i for i, v in enumerate(members)}
    adj = [[] for _ in range(g.n)]
    for e in (g.arcs if g.directed else g.edges):
        u, v = e
        w = 1 if g.weights is None else g.weights[e]
        adj[u].append((v, w))
        if not g.directed:
            adj[v].append((u, w))
    start = members[0]
    full = (1 << len(members)) - 1
    dist = {(start, 1): Fraction(0)}
    heap = [(Fraction(0), start, 1)]
    best = None
    while heap:
        d, v, seen = heappop(heap)
        if dist.get((v, seen), INF) < d:
            continue
        if seen == full and v == start:
            best = d
            break
        for u, w in adj[v]:
            seen2 = seen | (1 << index[u]) if u in index else seen
            nd = d + w
            if nd < dist.get((u, seen2), INF):
                dist[(u, seen2)] = nd
                heappush(heap, (nd, u, seen2))
    if best is None:
        raise AssertionError("walk search found no closed walk")
    num, den = best.numerator, best.denominator
    return num if den == 1 else best


def _mst_weight(vertices, edges, weights):
    """Kruskal on the induced subgraph; None if it is disconnected."""
    verts = sorted(vertices)
    pos = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pool = [(weights[e] if weights else 1, e) for e in edges
            if e[0] in pos and e[1] in pos]
    pool.sort()
    total, used = 0, 0
    for w, (u, v) in pool:
        ru, rv = find(pos[u]), find(pos[v])
        if ru != rv:
            parent[ru] = rv
            total += w
            used += 1
    return total if used == len(verts) - 1 else None


def superset_steiner(g, members):
    """Steiner distance by enumerating every vertex superset of the terminals.

    A lightest connected subgraph through S is a tree, and restricted to its
    own vertex set it is a spanning tree there, so minimising the induced
    MST weight over all supersets of S is exact.
    """
    members = set(members)
    rest = [v for v in range(g.n) if v not in members]
    best = None
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            w = _mst_weight(members.union(extra), g.edges, g.weights)
            if w is not None and (best is None or w < best):
                best = w
    return best


def arc_subset_steiner(d, members):
    """Digraph Steiner distance by enumerating arc subsets.

    Minimum total arc weight of a set of arcs under which every terminal
    can reach every other. Exponential in the arc count; keep it tiny.
    """
    members = sorted(set(members))
    if len(members) == 1:
        return 0
    arcs = d.arcs
    best = None
    for mask in range(1 << len(arcs)):
        chosen = [arcs[i] for i in range(len(arcs)) if mask >> i & 1]
        w = sum((d.weights[a] if d.weights else 1) for a in chosen)
        if best is not None and w >= best:
            continue
        adj = {}
        for u, v in chosen:
            adj.setdefault(u, []).append(v)
        ok = True
        for s in members:
            seen = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if any(t not in seen for t in members):
                ok = False
                break
        if ok:
            best = w
    return best


def pairwise_distances(g):
    """Dijkstra from every vertex, straight off the adjacency lists."""
    adj = [[] for _ in range(g.n)]
    for e in (g.arcs if g.directed else g.edges):
        u, v = e
        w = 1 if g.weights is None else g.weights[e]
        adj[u].append((v, w))
        if not g.directed:
            adj[v].append((u, w))
    table = {}
    for s in range(g.n):
        dist = {s: 0}
        heap = [(0, s)]
        while heap:
            dv, v = heappop(heap)
            if dist.get(v, INF) < dv:
                continue
            for u, w in adj[v]:
                nd = dv + w
                if nd < dist.get(u, INF):
                    dist[u] = nd
                    heappush(heap, (nd, u))
        for v, dv in dist.items():
            table[s, v] = dv
    return table
