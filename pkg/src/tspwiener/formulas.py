"""Exact closed forms and asymptotics for tour aggregates on named families.

Everything here is rational arithmetic; nothing floats. Each closed form is
cross-checked against brute-force enumeration in the test suite, and the
cycle formula is restricted to the regime where its counting argument is
airtight (see wtspk_cycle_exact).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .graphs import Graph, make_family
from .metric import Number, apsp, normalize_number, wiener
from .tsp import tsp_wiener


@dataclass(frozen=True)
class FormulaValue:
    family: str
    parameters: tuple[int, ...]
    exact: Number
    asymptotic: Fraction | None = None


def _check_range(n: int, k: int, lo: int = 2) -> None:
    if not (lo <= k <= n):
        raise PreconditionError("k = %d out of range %d..%d" % (k, lo, n))


def wtspk_clique(n: int, k: int) -> int:
    """Tour-Wiener index of the complete graph: every k-set costs k."""
    _check_range(n, k)
    return k * math.comb(n, k)


def wtspk_star(n: int, k: int) -> int:
    """Tour-Wiener index of the star on n vertices.

    Sets of k leaves tour at cost 2k; sets containing the center save one
    excursion and cost 2(k-1).
    """
    if n < 2:
        raise PreconditionError("star needs n >= 2, got %d" % n)
    _check_range(n, k)
    return 2 * k * math.comb(n - 1, k) + 2 * (k - 1) * math.comb(n - 1, k - 1)


def wtspk_path(n: int, k: int) -> int:
    """Tour-Wiener index of the path: C(n,k) * 2(k-1)(n+1)/(k+1), an integer."""
    _check_range(n, k)
    value = Fraction(2 * (k - 1) * (n + 1), k + 1) * math.comb(n, k)
    assert value.denominator == 1, "path closed form must be integral"
    return int(value)


def wtspk_cycle_exact(n: int, k: int) -> int:
    """Tour-Wiener index of the cycle, exact.

    Classify each k-set by the edge length i of the shortest arc containing
    it: for i <= floor(n/2) the tour walks that arc out and back (cost 2i),
    otherwise the whole cycle (cost n). There are n*C(i-1, k-2) sets per
    length i, each counted once because an arc of at most half the cycle is
    unique when n is odd. For even n the ties at i = n/2 break that count,
    so even orders are answered by plain enumeration instead, with a
    warning.
    """
    if n < 3:
        raise PreconditionError("cycle needs n >= 3, got %d" % n)
    _check_range(n, k, lo=3)
    if n % 2 == 0:
        warnings.warn(
            "cycle closed form covers odd orders only; n = %d computed by "
            "enumeration" % n,
            UserWarning,
            stacklevel=2,
        )
        return int(tsp_wiener(make_family("cycle", n), k))
    half = n // 2
    covered = 0
    total = 0
    for i in range(k - 1, half + 1):
        count = n * math.comb(i - 1, k - 2)
        covered += count
        total += count * 2 * i
    total += (math.comb(n, k) - covered) * n
    return total


def mutspk_cycle_asymptotic(k: int) -> Fraction:
    """Leading coefficient of the average cycle tour: mu_tsp,k(C_n) ~ (1 - 2^(1-k)) n."""
    if k < 2:
        raise PreconditionError("k must be at least 2, got %d" % k)
    return 1 - Fraction(1, 2 ** (k - 1))


def broom_integral(k: int) -> Fraction:
    """Exact value of 6 * integral from 1/12 to 1/3 of (1 - x^k - (1-x)^k) dx.

    This c(k) makes c(k)*2d the heuristic average tour estimate for the
    three-broom tree of diameter d; it increases to 3/2 as k grows.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2, got %d" % k)

    def antiderivative(x: Fraction) -> Fraction:
        return x - x ** (k + 1) / (k + 1) + (1 - x) ** (k + 1) / (k + 1)

    return 6 * (antiderivative(Fraction(1, 3)) - antiderivative(Fraction(1, 12)))


def wtsp3_identity(g: Graph) -> tuple[Number, Number]:
    """(tour-Wiener at k=3, (n-2) * Wiener) — the two are equal on every graph."""
    if g.directed:
        raise PreconditionError("the k=3 identity is for undirected graphs")
    if g.n < 3:
        raise PreconditionError("need n >= 3, got %d" % g.n)
    m = apsp(g)
    lhs = tsp_wiener(g, 3)
    rhs = normalize_number((g.n - 2) * Fraction(wiener(m)))
    return lhs, rhs


_CLOSED_FORMS = {
    "clique": wtspk_clique,
    "star": wtspk_star,
    "path": wtspk_path,
    "cycle": wtspk_cycle_exact,
}


def evaluate_family(name: str, n: int, k: int) -> FormulaValue:
    """Closed-form tour-Wiener value for a supported family."""
    if name not in _CLOSED_FORMS:
        raise PreconditionError(
            "no closed form for family %r (have: %s)"
            % (name, ", ".join(sorted(_CLOSED_FORMS)))
        )
    exact = _CLOSED_FORMS[name](n, k)
    asym = mutspk_cycle_asymptotic(k) if name == "cycle" else None
    return FormulaValue(family=name, parameters=(n, k), exact=exact, asymptotic=asym)
