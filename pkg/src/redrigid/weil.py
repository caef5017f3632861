"""Weil-bound intervals q^g -/+ 4^g q^(g - 1/2) and the injective-implies-onto pigeonhole.

Above the threshold 9 * 16^g every group whose order lies in the interval
is more than half the size of every other such group, so an injection
between two of them is a bijection.  All comparisons are exact integer
tests; floats are only returned for display, rounded outward.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt


def threshold(g: int) -> int:
    return 9 * 2 ** (4 * g)


def _parts(nm: int, g: int) -> tuple[int, int]:
    # interval is A -/+ B*sqrt(nm)
    return nm**g, 2 ** (2 * g) * nm ** (g - 1)


def _le_a_minus_bs(x: Fraction, A: int, B: int, nm: int) -> bool:
    """x <= A - B*sqrt(nm), decided exactly."""
    d = A - x  # need B*sqrt(nm) <= d
    return d >= 0 and B * B * nm <= d * d


def _ge_a_plus_bs(x: Fraction, A: int, B: int, nm: int) -> bool:
    """x >= A + B*sqrt(nm), decided exactly."""
    d = x - A
    return d >= 0 and B * B * nm <= d * d


def weil_interval(nm: int, g: int) -> tuple:
    """(lower, upper) for a g-dimensional abelian variety over a field of size nm.

    Exact ``Fraction`` endpoints when nm is a perfect square; otherwise floats
    certified to enclose the true interval.
    """
    if nm < 2 or g < 1:
        raise ValueError("need nm >= 2 and g >= 1")
    A, B = _parts(nm, g)
    r = isqrt(nm)
    if r * r == nm:
        return Fraction(A - B * r), Fraction(A + B * r)
    s = B * math.sqrt(nm)
    lo, hi = float(A - s), float(A + s)
    while not _le_a_minus_bs(Fraction(lo), A, B, nm):
        lo = math.nextafter(lo, -math.inf)
    while not _ge_a_plus_bs(Fraction(hi), A, B, nm):
        hi = math.nextafter(hi, math.inf)
    return lo, hi


def ratio_below_two(nm: int, g: int) -> bool:
    """upper(nm, g) < 2 * lower(nm, g), exactly.

    A + Bs < 2(A - Bs)  <=>  3Bs < A  <=>  9 B^2 nm < A^2  (A > 0).
    """
    A, B = _parts(nm, g)
    return 9 * B * B * nm < A * A


def injectivity_threshold_check(g: int, nm_max: int) -> bool:
    """True iff the ratio test passes for every integer nm in (9 * 16^g, nm_max]."""
    t = threshold(g)
    if nm_max < t + 1:
        raise ValueError(f"nm_max must be at least {t + 1} for g={g}")
    return all(ratio_below_two(nm, g) for nm in range(t + 1, nm_max + 1))
