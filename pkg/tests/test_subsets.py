from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from tspwiener import colex_iter, colex_rank, colex_unrank


def test_iteration_matches_ascending_bitmask_order():
    # colex order on k-sets is exactly numeric order of characteristic masks
    for n in range(1, 9):
        for k in range(1, n + 1):
            masks = sorted(sum(1 << v for v in s)
                           for s in combinations(range(n), k))
            got = [sum(1 << v for v in s) for s in colex_iter(n, k)]
            assert got == masks


def test_rank_unrank_roundtrip_exhaustive():
    for n in range(1, 10):
        for k in range(1, n + 1):
            for r, s in enumerate(colex_iter(n, k)):
                assert colex_rank(s) == r
                assert colex_unrank(r, k, n) == s


def test_known_ranks():
    assert colex_rank((0, 1, 2)) == 0
    assert colex_rank((1, 2, 3)) == comb(3, 3) + comb(2, 2) + comb(1, 1)
    assert colex_unrank(comb(12, 4) - 1, 4, 12) == (8, 9, 10, 11)


@given(st.integers(2, 40), st.data())
def test_rank_unrank_roundtrip_random(n, data):
    k = data.draw(st.integers(1, min(n, 8)))
    members = tuple(sorted(data.draw(
        st.sets(st.integers(0, n - 1), min_size=k, max_size=k))))
    r = colex_rank(members)
    assert 0 <= r < comb(n, k)
    assert colex_unrank(r, k, n) == members


def test_unrank_rejects_out_of_range():
    with pytest.raises(ValueError):
        colex_unrank(comb(6, 3), 3, 6)
    with pytest.raises(ValueError):
        colex_unrank(-1, 3, 6)
