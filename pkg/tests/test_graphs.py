import random
from fractions import Fraction

import pytest

from tspwiener import (
    Digraph,
    Graph,
    ParseError,
    PreconditionError,
    count_connected_graphs,
    encode_graph6,
    enumerate_connected_graphs,
    make_family,
    parse_edge_list,
    parse_graph6,
)

# number of connected labeled graphs on n vertices, n = 1..7 (OEIS A001187)
CONNECTED_COUNTS = [1, 1, 4, 38, 728, 26704, 1866256]


class TestFamilies:
    def test_clique(self):
        g = make_family("clique", 6)
        assert g.n == 6 and g.m == 15
        assert all(g.degree(v) == 5 for v in range(6))

    def test_cycle(self):
        g = make_family("cycle", 7)
        assert g.m == 7
        assert all(g.degree(v) == 2 for v in range(7))

    def test_path_and_star(self):
        p = make_family("path", 5)
        assert p.m == 4 and sorted(p.degree(v) for v in range(5)) == [1, 1, 2, 2, 2]
        s = make_family("star", 5)
        assert s.m == 4 and max(s.degree(v) for v in range(5)) == 4

    def test_complete_bipartite(self):
        g = make_family("kab", 2, 3)
        assert g.n == 5 and g.m == 6
        assert sorted(g.degree(v) for v in range(5)) == [2, 2, 2, 3, 3]

    def test_broom_shape(self):
        # order 2d+1 with diameter d, three identical brooms at a center
        t = make_family("broom", 12)
        assert t.n == 25 and t.m == 24
        assert t.is_connected()
        degs = sorted(t.degree(v) for v in range(t.n))
        assert degs[-1] >= 3  # broom tips
        assert degs.count(1) == 3 * (12 // 6 + 1)

    def test_dp_strongly_connected(self):
        d = make_family("dp", 12, 5)
        assert d.n == 12 and d.directed
        assert d.is_strongly_connected()

    @pytest.mark.parametrize("name,params", [
        ("cycle", (2,)),
        ("broom", (7,)),
        ("broom", (0,)),
        ("dp", (4, 9)),
        ("kab", (0, 3)),
        ("nosuch", (5,)),
    ])
    def test_rejects_bad_parameters(self, name, params):
        with pytest.raises(PreconditionError):
            make_family(name, *params)


class TestGraphValidation:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    def test_rejects_float_weight(self):
        with pytest.raises(TypeError):
            Graph(2, [(0, 1)], {(0, 1): 0.5})

    def test_rejects_bool_weight(self):
        with pytest.raises(TypeError):
            Graph(2, [(0, 1)], {(0, 1): True})

    def test_rejects_partial_weights(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 2)], {(0, 1): 2})

    def test_edges_normalized(self):
        g = Graph(4, [(2, 0), (3, 1)])
        assert g.edges == ((0, 2), (1, 3))

    def test_weight_lookup_unordered(self):
        g = Graph(3, [(0, 2)], {(2, 0): Fraction(5, 2)})
        assert g.weight(2, 0) == g.weight(0, 2) == Fraction(5, 2)

    def test_digraph_allows_both_orientations(self):
        d = Digraph(3, [(0, 1), (1, 0), (1, 2), (2, 0)])
        assert d.m == 4 and d.directed
        assert d.is_strongly_connected()


class TestGraph6:
    def test_known_codes(self):
        # hand-packed: K4 upper triangle is all ones, P4 is 101001
        assert encode_graph6(make_family("clique", 4)) == "C~"
        assert encode_graph6(make_family("path", 4)) == "Ch"
        assert encode_graph6(make_family("cycle", 6)) == "EhEG"

    def test_parse_known(self):
        g = parse_graph6("C~")
        assert g.n == 4 and g.m == 6

    def test_roundtrip_exhaustive_small(self):
        for n in range(1, 6):
            for g in enumerate_connected_graphs(n):
                h = parse_graph6(encode_graph6(g))
                assert h.n == g.n and h.edges == g.edges

    def test_roundtrip_random(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randint(1, 30)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.3]
            g = Graph(n, edges)
            assert parse_graph6(encode_graph6(g)).edges == g.edges

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_graph6("C~~~~~~")
        with pytest.raises(ParseError):
            parse_graph6("")
        with pytest.raises(ParseError):
            parse_graph6("C\x1f")

    def test_rejects_weighted(self):
        g = Graph(2, [(0, 1)], {(0, 1): 3})
        with pytest.raises(ValueError):
            encode_graph6(g)


class TestEnumeration:
    def test_connected_counts(self):
        for n, want in enumerate(CONNECTED_COUNTS, start=1):
            assert count_connected_graphs(n) == want

    def test_enumeration_agrees_with_count(self):
        for n in range(1, 6):
            graphs = list(enumerate_connected_graphs(n))
            assert len(graphs) == count_connected_graphs(n)
            assert all(g.is_connected() for g in graphs)

    def test_enumeration_order_deterministic(self):
        a = [g.edges for g in enumerate_connected_graphs(4)]
        b = [g.edges for g in enumerate_connected_graphs(4)]
        assert a == b

    def test_order_limit(self):
        with pytest.raises(PreconditionError):
            list(enumerate_connected_graphs(8))


class TestEdgeList:
    def test_unweighted(self):
        g = parse_edge_list("0 1\n1 2\n")
        assert g.edges == ((0, 1), (1, 2)) and not g.weighted

    def test_weighted_with_fractions(self):
        g = parse_edge_list("0 1 3\n1 2 7/2\n")
        assert g.weight(1, 2) == Fraction(7, 2)

    def test_comments_and_blanks(self):
        g = parse_edge_list("# triangle\n0 1\n\n1 2\n0 2\n")
        assert g.m == 3

    def test_directed(self):
        d = parse_edge_list("0 1\n1 0\n", directed=True)
        assert d.directed and d.m == 2

    def test_decimal_weights_parse_exactly(self):
        g = parse_edge_list("0 1 2.5\n1 2 1\n")
        assert g.weight(0, 1) == Fraction(5, 2)

    def test_rejects_malformed(self):
        with pytest.raises(ParseError):
            parse_edge_list("0\n")
        with pytest.raises(ParseError):
            parse_edge_list("0 one\n")
        with pytest.raises(ParseError):
            parse_edge_list("0 1 -3\n")
        with pytest.raises(ParseError):
            parse_edge_list("0 1 2\n1 2\n")


def test_relabel_preserves_structure():
    rng = random.Random(3)
    g = make_family("broom", 6)
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(h.degree(v) for v in range(h.n)) == \
        sorted(g.degree(v) for v in range(g.n))
    assert h.m == g.m
