"""Graph and digraph types, parsers, named families, and exhaustive enumeration.

Vertices are always 0..n-1. Graphs are simple (no loops, no parallel edges);
digraphs allow both (u,v) and (v,u) but no loops or repeated arcs. Edge
weights, when present, are exact rationals (int or Fraction) - floats are
rejected so that every downstream value stays exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, PreconditionError

Weight = int | Fraction

#: largest order for which exhaustive connected-graph enumeration is offered
ENUMERATION_MAX_N = 7


def _checked_weight(w, where: str) -> Weight:
    if isinstance(w, bool) or not isinstance(w, (int, Fraction)):
        raise TypeError(f"{where}: weights must be int or Fraction, got {type(w).__name__}")
    if w < 0:
        raise ValueError(f"{where}: negative weight {w}")
    return w


class Graph:
    """Immutable-by-convention undirected simple graph.

    ``edges`` is a sorted tuple of (u, v) pairs with u < v. ``weights`` is
    either None (every edge has weight 1) or a dict covering every edge.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 weights: Mapping[tuple[int, int], Weight] | None = None):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"graph order must be a positive int, got {n!r}")
        self.n = n
        seen = set()
        norm = []
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u},{v}) out of range for order {n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        if weights is None:
            self.weights = None
        else:
            wmap = {}
            for key, w in weights.items():
                u, v = key
                if u > v:
                    u, v = v, u
                wmap[(u, v)] = _checked_weight(w, f"edge ({u},{v})")
            if set(wmap) != seen:
                raise ValueError("weight map must cover exactly the edge set")
            self.weights = wmap

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def directed(self) -> bool:
        return False

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbr)

    def weight(self, u: int, v: int) -> Weight:
        if self.weights is None:
            return 1
        if u > v:
            u, v = v, u
        return self.weights[(u, v)]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def adjacency_bitmasks(self) -> tuple[int, ...]:
        """Per-vertex neighbour sets as bitmasks; requires n <= 63."""
        if self.n > 63:
            raise PreconditionError(f"adjacency bitmasks need n <= 63, got n={self.n}")
        bits = [0] * self.n
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return tuple(bits)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        count = 1
        adj = self.adjacency
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Image under the vertex permutation v -> perm[v]."""
        p = list(perm)
        if sorted(p) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of 0..n-1")
        edges = [(p[u], p[v]) for u, v in self.edges]
        weights = None
        if self.weights is not None:
            weights = {}
            for (u, v), w in self.weights.items():
                a, b = p[u], p[v]
                if a > b:
                    a, b = b, a
                weights[(a, b)] = w
        return Graph(self.n, edges, weights)

    def _key(self):
        wkey = None if self.weights is None else tuple(sorted(self.weights.items()))
        return (self.n, self.edges, wkey)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        tag = "weighted " if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}{', ' + tag.strip() if tag else ''})"


class Digraph:
    """Immutable-by-convention directed graph; arcs are ordered pairs."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]],
                 weights: Mapping[tuple[int, int], Weight] | None = None):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"digraph order must be a positive int, got {n!r}")
        self.n = n
        seen = set()
        norm = []
        for a in arcs:
            u, v = a
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for order {n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        self.arcs: tuple[tuple[int, int], ...] = tuple(norm)
        if weights is None:
            self.weights = None
        else:
            wmap = {tuple(key): _checked_weight(w, f"arc {tuple(key)}") for key, w in weights.items()}
            if set(wmap) != seen:
                raise ValueError("weight map must cover exactly the arc set")
            self.weights = wmap

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def directed(self) -> bool:
        return True

    @cached_property
    def out_adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            nbr[u].append(v)
        return tuple(tuple(sorted(a)) for a in nbr)

    @cached_property
    def in_adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            nbr[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbr)

    def weight(self, u: int, v: int) -> Weight:
        if self.weights is None:
            return 1
        return self.weights[(u, v)]

    def is_strongly_connected(self) -> bool:
        if self.n == 1:
            return True
        for adj in (self.out_adjacency, self.in_adjacency):
            seen = [False] * self.n
            seen[0] = True
            stack = [0]
            count = 1
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        count += 1
                        stack.append(w)
            if count != self.n:
                return False
        return True

    def relabel(self, perm: Iterable[int]) -> "Digraph":
        p = list(perm)
        if sorted(p) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of 0..n-1")
        arcs = [(p[u], p[v]) for u, v in self.arcs]
        weights = None
        if self.weights is not None:
            weights = {(p[u], p[v]): w for (u, v), w in self.weights.items()}
        return Digraph(self.n, arcs, weights)

    def _key(self):
        wkey = None if self.weights is None else tuple(sorted(self.weights.items()))
        return (self.n, self.arcs, wkey)

    def __eq__(self, other):
        return isinstance(other, Digraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"


def vertex_set(members: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate and canonicalize a vertex subset: sorted, distinct, in range."""
    s = tuple(sorted(members))
    if not s:
        raise PreconditionError("vertex set must be nonempty")
    prev = -1
    for v in s:
        if not isinstance(v, int) or isinstance(v, bool):
            raise PreconditionError(f"vertex {v!r} is not an int")
        if v == prev:
            raise PreconditionError(f"repeated vertex {v} in set")
        if not 0 <= v < n:
            raise PreconditionError(f"vertex {v} out of range for order {n}")
        prev = v
    return s


# ---------------------------------------------------------------------------
# graph6


def _g6_read_order(data: bytes):
    """Decode the order prefix; returns (n, offset of first payload byte)."""
    if not data:
        raise ParseError("empty graph6 string")
    b0 = data[0]
    if b0 == 126:  # '~': long form
        if len(data) >= 2 and data[1] == 126:
            raise ParseError("8-byte graph6 order form (n > 258047) not supported")
        if len(data) < 4:
            raise ParseError("truncated graph6 long-form order at byte offset 1")
        n = 0
        for i in (1, 2, 3):
            c = data[i]
            if not 63 <= c <= 126:
                raise ParseError(f"invalid graph6 byte {c} at byte offset {i}")
            n = (n << 6) | (c - 63)
        return n, 4
    if not 63 <= b0 <= 126:
        raise ParseError(f"invalid graph6 byte {b0} at byte offset 0")
    return b0 - 63, 1


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string into a Graph.

    The optional ``>>graph6<<`` header is accepted; sparse6 payloads are not.
    The bit vector lists the upper triangle of the adjacency matrix in column
    order: (0,1), (0,2), (1,2), (0,3), ... Padding bits must be zero.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if s.startswith(":") or s.startswith(">>sparse6<<"):
        raise ParseError("sparse6 input is not supported; supply graph6")
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise ParseError(f"graph6 must be ASCII: {exc}") from None
    n, off = _g6_read_order(data)
    if n == 0:
        raise ParseError("graph6 encodes a graph of order 0; order must be >= 1")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - off != nbytes:
        raise ParseError(
            f"graph6 payload for order {n} needs {nbytes} bytes, "
            f"found {len(data) - off} starting at byte offset {off}")
    bits = []
    for i in range(nbytes):
        c = data[off + i]
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {c} at byte offset {off + i}")
        val = c - 63
        for shift in range(5, -1, -1):
            bits.append((val >> shift) & 1)
    for pos in range(nbits, len(bits)):
        if bits[pos]:
            raise ParseError(
                f"nonzero padding bit at byte offset {off + pos // 6}")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode an unweighted Graph as graph6 (n <= 258047)."""
    if g.weighted:
        raise ValueError("graph6 cannot carry edge weights")
    n = g.n
    if n > 258047:
        raise ValueError(f"graph6 long form supports n <= 258047, got {n}")
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    present = set(g.edges)
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    payload = bytearray()
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        payload.append(val + 63)
    return (head + bytes(payload)).decode("ascii")


# ---------------------------------------------------------------------------
# edge lists


def parse_edge_list(text: str, directed: bool = False) -> Graph | Digraph:
    """Parse a whitespace edge list: one "u v" or "u v w" per line.

    An optional first line ``n <count>`` declares the order, which permits
    isolated vertices; without it every index 0..max must occur. Weights are
    nonnegative decimals (or p/q), parsed exactly; weighted and unweighted
    lines must not be mixed. ``#`` starts a comment.
    """
    lines = text.splitlines()
    n_declared: int | None = None
    raw: list[tuple[int, int, Weight | None, int]] = []
    weighted: bool | None = None
    for lineno, line in enumerate(lines, 1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        if tokens[0] == "n" and n_declared is None and not raw:
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: order header must be 'n <count>'")
            try:
                n_declared = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad order {tokens[1]!r}") from None
            if n_declared < 1:
                raise ParseError(f"line {lineno}: order must be >= 1")
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v' or 'u v w'")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: bad endpoints {tokens[:2]}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex index")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        w: Weight | None = None
        if len(tokens) == 3:
            try:
                frac = Fraction(tokens[2])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"line {lineno}: bad weight {tokens[2]!r}") from None
            if frac < 0:
                raise ParseError(f"line {lineno}: negative weight {tokens[2]}")
            w = int(frac) if frac.denominator == 1 else frac
        this_weighted = w is not None
        if weighted is None:
            weighted = this_weighted
        elif weighted != this_weighted:
            raise ParseError(f"line {lineno}: mixed weighted and unweighted edges")
        raw.append((u, v, w, lineno))
    if not raw:
        raise ParseError("edge list contains no edges")
    max_idx = max(max(u, v) for u, v, _, _ in raw)
    if n_declared is not None:
        n = n_declared
        if max_idx >= n:
            raise ParseError(f"vertex {max_idx} out of range for declared order {n}")
    else:
        n = max_idx + 1
        used = set()
        for u, v, _, _ in raw:
            used.add(u)
            used.add(v)
        for v in range(n):
            if v not in used:
                raise ParseError(
                    f"vertex {v} never appears; declare the order with an 'n' header "
                    f"to permit isolated vertices")
    seen = set()
    pairs = []
    wmap: dict[tuple[int, int], Weight] = {}
    for u, v, w, lineno in raw:
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            kind = "arc" if directed else "edge"
            raise ParseError(f"line {lineno}: duplicate {kind} {key}")
        seen.add(key)
        pairs.append(key)
        if w is not None:
            wmap[key] = w
    weights = wmap if weighted else None
    if directed:
        return Digraph(n, pairs, weights)
    return Graph(n, pairs, weights)


# ---------------------------------------------------------------------------
# named families


def _family_error(msg: str) -> PreconditionError:
    return PreconditionError(msg)


def _path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise _family_error(f"cycle requires n >= 3 (simple graph), got n={n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph(n, edges)


def _star(n: int) -> Graph:
    # order-n star: center 0 with n-1 leaves
    return Graph(n, [(0, i) for i in range(1, n)])


def _clique(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _kab(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise _family_error(f"complete bipartite parts must be >= 1, got {a},{b}")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _broom(d: int) -> Graph:
    """Spider with 3 handles of d/2 - 1 edges, each tip carrying d/6 + 1 leaves.

    Requires d >= 6 and d == 0 (mod 6); the result has order 2d + 1 and
    diameter d.
    """
    if d < 6 or d % 6:
        raise _family_error(f"broom parameter must satisfy d >= 6 and d % 6 == 0, got d={d}")
    h = d // 2 - 1
    m = d // 6 + 1
    edges = []
    nxt = 1
    for _ in range(3):
        prev = 0
        for _ in range(h):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        tip = prev
        for _ in range(m):
            edges.append((tip, nxt))
            nxt += 1
    return Graph(nxt, edges)


def _dp(n: int, d: int) -> Digraph:
    """Digraph on a directed path v_1..v_{d-1} plus leaves l_i.

    Arcs: the path, v_{d-1} -> l_i and l_i -> v_1 for each leaf. Any two
    distinct leaves are at one-way distance exactly d. Vertices 0..d-2 are
    the path in order; d-1..n-1 are the leaves.
    """
    if d < 3:
        raise _family_error(f"dp family requires d >= 3, got d={d}")
    if n < d + 1:
        raise _family_error(f"dp family requires n >= d+1, got n={n}, d={d}")
    path_len = d - 1
    arcs = [(i, i + 1) for i in range(path_len - 1)]
    for leaf in range(path_len, n):
        arcs.append((path_len - 1, leaf))
        arcs.append((leaf, 0))
    return Digraph(n, arcs)


_FAMILIES = {
    "path": (1, _path),
    "cycle": (1, _cycle),
    "star": (1, _star),
    "clique": (1, _clique),
    "kab": (2, _kab),
    "broom": (1, _broom),
    "dp": (2, _dp),
}


def make_family(name: str, *params: int) -> Graph | Digraph:
    """Construct a named family member: path/cycle/star/clique k-ab/broom/dp.

    Orders and labels are pinned so values are reproducible: stars are
    centered at 0, brooms are labeled handle-first per branch, dp digraphs
    put the path at 0..d-2.
    """
    if name not in _FAMILIES:
        raise _family_error(
            f"unknown family {name!r}; expected one of {sorted(_FAMILIES)}")
    arity, builder = _FAMILIES[name]
    if len(params) != arity:
        raise _family_error(
            f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    for p in params:
        if not isinstance(p, int) or isinstance(p, bool):
            raise _family_error(f"family parameters must be ints, got {p!r}")
    if name in ("path", "star", "clique") and params[0] < 1:
        raise _family_error(f"family {name!r} requires n >= 1, got {params[0]}")
    if name == "cycle" and params[0] < 3:
        raise _family_error(f"cycle requires n >= 3 (simple graph), got n={params[0]}")
    return builder(*params)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def pair_order(n: int) -> list[tuple[int, int]]:
    """The fixed edge-index order used by edge bitmasks: lexicographic (u,v)."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    """Graph whose edges are the set bits of ``mask`` in pair_order(n)."""
    pairs = pair_order(n)
    if mask >> len(pairs):
        raise ValueError(f"edge mask {mask} out of range for order {n}")
    return Graph(n, [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1])


def connected_graph_masks(n: int):
    """All edge bitmasks of connected graphs of order n, ascending (numpy array).

    This is the enumeration backbone: bit j of a mask is the j-th pair of
    pair_order(n). Exhaustive scans index graphs by these masks.
    """
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise PreconditionError(
            f"exhaustive enumeration is offered for 1 <= n <= {ENUMERATION_MAX_N}; "
            f"for larger orders ingest specific graphs via graph6")
    from . import _fast
    return _fast.connected_edge_masks(n)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Yield every labeled connected graph of order n <= 7.

    Order is ascending edge bitmask (see pair_order), so runs are
    reproducible. Duplicates across isomorphism are intentional; every
    invariant downstream is isomorphism-invariant, so they only cost time.
    """
    masks = connected_graph_masks(n)
    pairs = pair_order(n)
    np_int = int  # localize
    for mask in masks:
        mask = np_int(mask)
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1])


def count_connected_graphs(n: int) -> int:
    """Number of labeled connected graphs of order n (n <= 7)."""
    return int(connected_graph_masks(n).shape[0])
