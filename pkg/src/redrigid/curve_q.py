"""Integral short-Weierstrass curves over Q and their reduction mod p.

Rational points are stored as normalised projective integer triples
(X : Y : Z) with gcd 1 and Z >= 0, so equality of points is equality of
triples.  Group-law arithmetic runs on exact affine ``Fraction`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Tuple

from .errors import BadReductionError, InvalidCurveError, NotOnCurveError
from .fp import CurveFp, PointFp
from .primes import factorize, sieve_primes

# Mazur: a rational torsion point has order at most 12
TORSION_BOUND = 12

_Affine = Optional[Tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class CurveQ:
    a: int
    b: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise InvalidCurveError(f"singular curve y^2 = x^3 + {self.a}x + {self.b}")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def reduce(self, p: int) -> CurveFp:
        if p < 5 or self.discriminant % p == 0:
            raise BadReductionError(f"{p} is not a prime of good reduction for {self}")
        return CurveFp(p, self.a, self.b)

    def contains(self, P: "PointQ") -> bool:
        X, Y, Z = P.X, P.Y, P.Z
        return Y * Y * Z == X**3 + self.a * X * Z * Z + self.b * Z**3

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b}"


@dataclass(frozen=True)
class PointQ:
    X: int
    Y: int
    Z: int

    def __post_init__(self):
        X, Y, Z = self.X, self.Y, self.Z
        if Z < 0 or gcd(gcd(X, Y), Z) != 1:
            raise ValueError(f"({X}:{Y}:{Z}) is not normalised")
        if Z == 0 and (X, Y) != (0, 1):
            raise ValueError("the only point with Z = 0 is (0:1:0)")

    @classmethod
    def projective(cls, X: int, Y: int, Z: int) -> "PointQ":
        g = gcd(gcd(X, Y), Z)
        if g == 0:
            raise ValueError("(0:0:0) is not a projective point")
        if Z < 0 or (Z == 0 and Y < 0):
            g = -g
        return cls(X // g, Y // g, Z // g)

    @classmethod
    def affine(cls, x, y) -> "PointQ":
        x, y = Fraction(x), Fraction(y)
        Z = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
        return cls.projective(x.numerator * (Z // x.denominator), y.numerator * (Z // y.denominator), Z)

    @property
    def is_identity(self) -> bool:
        return self.Z == 0

    def to_affine(self) -> _Affine:
        if self.Z == 0:
            return None
        return Fraction(self.X, self.Z), Fraction(self.Y, self.Z)

    def __str__(self):
        return f"{self.X}:{self.Y}:{self.Z}"


O = PointQ(0, 1, 0)


def _from_affine(P: _Affine) -> PointQ:
    return O if P is None else PointQ.affine(*P)


def _add_affine(a: int, P: _Affine, Q: _Affine) -> _Affine:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        lam = (3 * x1 * x1 + a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _mul_affine(a: int, k: int, P: _Affine) -> _Affine:
    if k < 0 and P is not None:
        k, P = -k, (P[0], -P[1])
    acc = None
    while k > 0:
        if k & 1:
            acc = _add_affine(a, acc, P)
        P = _add_affine(a, P, P)
        k >>= 1
    return acc


def _check(E: CurveQ, *pts: PointQ) -> None:
    for P in pts:
        if not E.contains(P):
            raise NotOnCurveError(f"({P}) is not on {E}")


def neg_q(P: PointQ) -> PointQ:
    return P if P.is_identity else PointQ(P.X, -P.Y, P.Z)


def add_q(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    _check(E, P, Q)
    return _from_affine(_add_affine(E.a, P.to_affine(), Q.to_affine()))


def scalar_mul_q(E: CurveQ, k: int, P: PointQ) -> PointQ:
    _check(E, P)
    return _from_affine(_mul_affine(E.a, k, P.to_affine()))


def multiples_q(E: CurveQ, P: PointQ, kmax: int) -> list[PointQ]:
    """[1P, 2P, ..., kmax P], built by repeated addition."""
    _check(E, P)
    base = P.to_affine()
    acc = base
    out = []
    for _ in range(kmax):
        out.append(_from_affine(acc))
        acc = _add_affine(E.a, acc, base)
    return out


def is_torsion(E: CurveQ, P: PointQ) -> bool:
    _check(E, P)
    if P.is_identity:
        return True
    base = P.to_affine()
    acc = base
    for _ in range(TORSION_BOUND):
        if acc is None:
            return True
        acc = _add_affine(E.a, acc, base)
    return False


def reduce_point(E: CurveQ, P: PointQ, p: int) -> PointFp:
    """The specialisation map: a point of E(Q) to its image in E(F_p)."""
    E.reduce(p)
    if P.Z % p == 0:
        return None
    zinv = pow(P.Z, -1, p)
    return P.X * zinv % p, P.Y * zinv % p


@dataclass(frozen=True)
class GoodPrimeSet:
    curves: Tuple[CurveQ, ...]
    bound: int
    excluded: frozenset = field(default_factory=frozenset)
    primes: Tuple[int, ...] = ()

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def good_primes(curves: Iterable[CurveQ] | CurveQ, bound: int, extra_excluded: Iterable[int] = ()) -> GoodPrimeSet:
    """Primes 5 <= p <= bound of good reduction for every supplied curve."""
    if isinstance(curves, CurveQ):
        curves = (curves,)
    curves = tuple(curves)
    bad = {2, 3} | set(extra_excluded)
    for E in curves:
        bad |= set(factorize(E.discriminant))
    primes = tuple(p for p in sieve_primes(bound) if p >= 5 and p not in bad)
    return GoodPrimeSet(curves, bound, frozenset(bad), primes)


def parse_curve(text: str) -> CurveQ:
    """``"a,b"`` -> the curve y^2 = x^3 + ax + b."""
    a, b = (int(t) for t in text.split(","))
    return CurveQ(a, b)


def parse_point(text: str) -> PointQ:
    """``"x,y"`` with rational entries (``"129/100,-383/1000"``) or ``"X:Y:Z"``."""
    text = text.strip()
    if ":" in text:
        X, Y, Z = (int(t) for t in text.split(":"))
        return PointQ.projective(X, Y, Z)
    x, y = text.split(",")
    return PointQ.affine(Fraction(x), Fraction(y))
