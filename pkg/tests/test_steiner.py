import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tspwiener import (
    Digraph,
    Graph,
    PreconditionError,
    ResourceBudgetError,
    apsp,
    enumerate_connected_graphs,
    make_family,
    steiner_distance,
    steiner_distance_digraph,
    steiner_mean,
    steiner_wiener,
)
from tspwiener.steiner import _steiner_value, steiner_distance_tree_fast

from conftest import random_connected_graph, random_strongly_connected_digraph, random_tree
from oracles import arc_subset_steiner, superset_steiner
from test_tsp import petersen, spindle, weighted_house


class TestFrozenValues:
    def test_petersen(self):
        g = petersen()
        assert steiner_wiener(g, 3) == 350
        assert steiner_wiener(g, 4) == 775

    def test_weighted_house(self):
        g = weighted_house()
        assert steiner_wiener(g, 2) == Fraction(47, 2)
        assert steiner_wiener(g, 3) == 37
        assert steiner_wiener(g, 4) == Fraction(47, 2)

    def test_spindle_digraph(self):
        d = spindle()
        assert steiner_wiener(d, 2) == 56
        assert steiner_wiener(d, 3) == 64
        assert steiner_distance_digraph(d, (0, 2, 4)).value == 8

    def test_star_and_path_closed_form(self):
        s = make_family("star", 7)
        m = apsp(s)
        for k in (2, 3, 4):
            for mem in combinations(range(7), k):
                want = k - 1 if 0 in mem else k
                assert _steiner_value(m, mem) == want
        p = make_family("path", 8)
        mp = apsp(p)
        for mem in combinations(range(8), 3):
            assert _steiner_value(mp, mem) == max(mem) - min(mem)


class TestOracleAgreement:
    def test_exhaustive_small_graphs(self):
        for n in range(2, 6):
            for g in enumerate_connected_graphs(n):
                m = apsp(g)
                for k in range(2, min(n, 4) + 1):
                    for s in combinations(range(n), k):
                        assert _steiner_value(m, s) == superset_steiner(g, s)

    def test_random_weighted_graphs(self):
        rng = random.Random(404)
        for _ in range(15):
            g = random_connected_graph(rng, rng.randint(4, 8), weighted=True)
            m = apsp(g)
            for _ in range(5):
                k = rng.randint(2, min(5, g.n))
                s = tuple(sorted(rng.sample(range(g.n), k)))
                assert _steiner_value(m, s) == superset_steiner(g, s)

    def test_tiny_digraphs_against_arc_subsets(self):
        rng = random.Random(405)
        done = 0
        while done < 10:
            d = random_strongly_connected_digraph(rng, rng.randint(3, 5),
                                                  weighted=bool(rng.getrandbits(1)),
                                                  extra=0.15)
            if d.m > 12:
                continue
            done += 1
            for k in (2, 3):
                for s in combinations(range(d.n), k):
                    got = steiner_distance_digraph(d, s).value
                    assert got == arc_subset_steiner(d, s)


class TestTreeFast:
    def test_agrees_with_general_solver(self):
        rng = random.Random(406)
        for _ in range(10):
            t = random_tree(rng, rng.randint(2, 10), weighted=bool(rng.getrandbits(1)))
            m = apsp(t)
            for _ in range(8):
                k = rng.randint(2, t.n)
                s = tuple(sorted(rng.sample(range(t.n), k)))
                assert steiner_distance_tree_fast(t, s) == _steiner_value(m, s)

    def test_rejects_non_tree(self):
        with pytest.raises(PreconditionError):
            steiner_distance_tree_fast(make_family("cycle", 5), (0, 2))


class TestWitness:
    def test_witness_is_an_optimal_tree(self):
        rng = random.Random(407)
        for _ in range(6):
            g = random_connected_graph(rng, 7, weighted=True)
            for _ in range(3):
                k = rng.randint(2, 4)
                s = tuple(sorted(rng.sample(range(7), k)))
                res = steiner_distance(g, s)
                assert sum(g.weight(u, v) for u, v in res.edges) == res.value
                # connected and touching every terminal
                touched = {s[0]}
                frontier = True
                while frontier:
                    frontier = False
                    for u, v in res.edges:
                        if (u in touched) != (v in touched):
                            touched.update((u, v))
                            frontier = True
                assert set(s) <= touched

    def test_witness_is_lex_min(self):
        # exhaustively compare against every optimal edge subset
        g = Graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (2, 4)])
        m = apsp(g)
        for k in (2, 3):
            for s in combinations(range(5), k):
                res = steiner_distance(g, s)
                opts = []
                for r in range(1, g.m + 1):
                    for sub in combinations(g.edges, r):
                        touched = {s[0]}
                        grew = True
                        while grew:
                            grew = False
                            for u, v in sub:
                                if (u in touched) != (v in touched):
                                    touched.update((u, v))
                                    grew = True
                        if set(s) <= touched and len(sub) == res.value:
                            opts.append(sub)
                assert res.edges == min(opts)

    def test_singleton(self):
        assert steiner_distance(make_family("path", 3), (1,)).value == 0

    def test_digraph_witness_weight_matches(self):
        d = spindle()
        res = steiner_distance_digraph(d, (0, 2, 4), strict=True)
        assert sum(d.weights[a] for a in res.edges) == res.value == 8


class TestAggregates:
    def test_mean_consistency(self):
        from math import comb
        g = petersen()
        assert steiner_mean(g, 4) * comb(10, 4) == 775

    def test_k_two_is_wiener(self):
        from tspwiener import wiener
        rng = random.Random(408)
        g = random_connected_graph(rng, 9, weighted=True)
        assert steiner_wiener(g, 2) == wiener(apsp(g))

    def test_large_order_terminal_restricted_route(self):
        # n > 16 leaves the lattice route; spot-check k = 2 and 3 against
        # distances and the one-branch-vertex form
        rng = random.Random(409)
        g = random_connected_graph(rng, 18, weighted=False, extra=0.1)
        m = apsp(g)
        from math import comb
        assert steiner_wiener(g, 2) == sum(m.get(u, v) for u, v in combinations(range(18), 2))
        want3 = 0
        for s in combinations(range(18), 3):
            want3 += min(sum(m.get(v, t) for t in s) for v in range(18))
        assert steiner_wiener(g, 3) == want3

    def test_budget_refusal(self):
        with pytest.raises(ResourceBudgetError):
            steiner_wiener(make_family("clique", 40), 17)

    def test_digraph_sweep_guard(self):
        with pytest.raises(ResourceBudgetError):
            steiner_wiener(make_family("dp", 40, 20), 5)


class TestMonotonicity:
    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6))
    def test_supersets_cost_no_less(self, seed):
        rng = random.Random(seed)
        g = random_connected_graph(rng, 8, weighted=True)
        m = apsp(g)
        s = tuple(sorted(rng.sample(range(8), 3)))
        extra = rng.choice([v for v in range(8) if v not in s])
        bigger = tuple(sorted(s + (extra,)))
        assert _steiner_value(m, s) <= _steiner_value(m, bigger)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6))
    def test_removing_edges_costs_no_less(self, seed):
        rng = random.Random(seed)
        g = random_connected_graph(rng, 7, weighted=False, extra=0.5)
        removable = [e for e in g.edges
                     if Graph(7, [f for f in g.edges if f != e]).is_connected()]
        if not removable:
            return
        drop = rng.choice(removable)
        h = Graph(7, [f for f in g.edges if f != drop])
        s = tuple(sorted(rng.sample(range(7), 4)))
        assert (_steiner_value(apsp(g), s)
                <= _steiner_value(apsp(h), s))

    def test_sandwich_against_tour(self):
        from tspwiener import tsp_distance
        rng = random.Random(410)
        for _ in range(10):
            g = random_connected_graph(rng, 8, weighted=True)
            m = apsp(g)
            s = tuple(sorted(rng.sample(range(8), rng.randint(2, 5))))
            dk = _steiner_value(m, s)
            t = tsp_distance(m, s).value
            assert dk <= t <= 2 * dk
