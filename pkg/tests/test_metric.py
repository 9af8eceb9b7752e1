import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tspwiener import Digraph, Graph, PreconditionError, apsp, make_family, mean_distance, wiener

from conftest import random_connected_graph, random_strongly_connected_digraph
from oracles import pairwise_distances


def test_path_distances():
    m = apsp(make_family("path", 5))
    assert m.get(0, 4) == 4
    assert m.get(1, 3) == 2
    assert m.get(2, 2) == 0


def test_known_wiener_values():
    assert wiener(apsp(make_family("path", 4))) == 10
    assert wiener(apsp(make_family("cycle", 6))) == 27
    assert wiener(apsp(make_family("clique", 9))) == 36
    assert mean_distance(apsp(make_family("path", 4))) == Fraction(5, 3)


def test_petersen_wiener():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    pet = Graph(10, [tuple(sorted(e)) for e in outer + inner + spokes])
    assert wiener(apsp(pet)) == 75


def test_weighted_rational_distances():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)],
              {(0, 1): 2, (1, 2): 1, (2, 3): 5, (3, 4): 1, (0, 4): 3,
               (1, 3): Fraction(3, 2)})
    m = apsp(g)
    assert m.get(0, 3) == Fraction(7, 2)
    assert m.get(2, 4) == Fraction(7, 2)
    assert m.get(2, 3) == Fraction(5, 2)  # around, not across


def test_digraph_asymmetry():
    d = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    m = apsp(d)
    assert m.get(0, 1) == 1 and m.get(1, 0) == 2
    assert m.directed


def test_unreachable_reported():
    d = Digraph(3, [(0, 1), (1, 2)])
    m = apsp(d)
    assert not m.finite(2, 0)
    with pytest.raises(PreconditionError):
        m.get(2, 0)
    assert m.get(0, 2) == 2


def test_disconnected_wiener_rejected():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        wiener(apsp(g))


def test_matches_dijkstra_oracle():
    rng = random.Random(41)
    for _ in range(25):
        g = random_connected_graph(rng, rng.randint(2, 9), weighted=bool(rng.getrandbits(1)))
        m = apsp(g)
        table = pairwise_distances(g)
        for u in range(g.n):
            for v in range(g.n):
                assert m.get(u, v) == table[(u, v)]
    for _ in range(15):
        d = random_strongly_connected_digraph(rng, rng.randint(2, 8),
                                              weighted=bool(rng.getrandbits(1)))
        m = apsp(d)
        table = pairwise_distances(d)
        for u in range(d.n):
            for v in range(d.n):
                assert m.get(u, v) == table[(u, v)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 9))
def test_triangle_inequality(seed, n):
    rng = random.Random(seed)
    g = random_connected_graph(rng, n, weighted=True)
    m = apsp(g)
    for u in range(n):
        for v in range(n):
            for w in range(n):
                assert m.get(u, w) <= m.get(u, v) + m.get(v, w)
            assert m.get(u, v) == m.get(v, u)
