"""k-subset enumeration in colexicographic order.

Colex order on sorted tuples coincides with ascending characteristic
bitmask, so ranks computed here agree with the bitmask indexing used by the
integer kernels. All deterministic subset choices in the package (witnesses,
first counterexamples) refer to this order.
"""

from __future__ import annotations

import math
from collections.abc import Iterator


def colex_rank(members: tuple[int, ...]) -> int:
    r = 0
    for i, v in enumerate(members):
        r += math.comb(v, i + 1)
    return r


def colex_unrank(rank: int, k: int, n: int) -> tuple[int, ...]:
    if not 0 <= rank < math.comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n}, {k})")
    out = [0] * k
    rem = rank
    for i in range(k - 1, -1, -1):
        v = i
        while v + 1 <= n - 1 and math.comb(v + 1, i + 1) <= rem:
            v += 1
        out[i] = v
        rem -= math.comb(v, i + 1)
    return tuple(out)


def colex_iter(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    c = list(range(k))
    while True:
        yield tuple(c)
        i = 0
        while i + 1 < k and c[i] + 1 == c[i + 1]:
            c[i] = i
            i += 1
        c[i] += 1
        if i == k - 1 and c[i] >= n:
            return
