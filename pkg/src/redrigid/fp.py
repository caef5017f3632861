"""Elliptic curves y^2 = x^3 + ax + b over prime fields F_p, p >= 5.

Points are ``None`` (the point at infinity) or an affine pair ``(x, y)`` of
reduced residues.  Everything here is pure; curves are frozen dataclasses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional, Tuple

import numpy as np

from .errors import InconsistentOrderError, InvalidCurveError, NotOnCurveError
from .primes import factorize, is_prime

PointFp = Optional[Tuple[int, int]]
INFINITY: PointFp = None

# p below this keeps every intermediate product of the vectorised powmod in int64
_NUMPY_P_LIMIT = 1 << 31


@dataclass(frozen=True)
class CurveFp:
    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise InvalidCurveError(f"modulus must be a prime >= 5, got {self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise InvalidCurveError(f"singular curve y^2 = x^3 + {self.a}x + {self.b} over F_{self.p}")

    def contains(self, P: PointFp) -> bool:
        if P is None:
            return True
        x, y = P
        p = self.p
        if not (0 <= x < p and 0 <= y < p):
            return False
        return (y * y - (x * x * x + self.a * x + self.b)) % p == 0

    def check(self, P: PointFp) -> None:
        if not self.contains(P):
            raise NotOnCurveError(f"{P} is not on {self}")


def legendre(a: int, p: int) -> int:
    """Quadratic character of a mod p via Euler's criterion; 0 when p | a."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _character_sum_numpy(p: int, a: int, b: int) -> int:
    x = np.arange(p, dtype=np.int64)
    base = (x * x % p * x + a * x + b) % p
    result = np.ones(p, dtype=np.int64)
    e = (p - 1) // 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return int(np.count_nonzero(result == 1)) - int(np.count_nonzero(result == p - 1))


@lru_cache(maxsize=65536)
def _order(p: int, a: int, b: int) -> int:
    if p < _NUMPY_P_LIMIT:
        s = _character_sum_numpy(p, a, b)
    else:
        s = sum(legendre(x * x * x + a * x + b, p) for x in range(p))
    return p + 1 + s


def curve_order(E: CurveFp) -> int:
    """#E(F_p) = p + 1 + sum over x of chi(x^3 + ax + b)."""
    return _order(E.p, E.a, E.b)


def neg(E: CurveFp, P: PointFp) -> PointFp:
    if P is None:
        return None
    return (P[0], -P[1] % E.p)


def _add(E: CurveFp, P: PointFp, Q: PointFp) -> PointFp:
    if P is None:
        return Q
    if Q is None:
        return P
    p = E.p
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + E.a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def add(E: CurveFp, P: PointFp, Q: PointFp) -> PointFp:
    E.check(P)
    E.check(Q)
    return _add(E, P, Q)


def _mul(E: CurveFp, k: int, P: PointFp) -> PointFp:
    if k < 0:
        k, P = -k, neg(E, P)
    acc = None
    while k:
        if k & 1:
            acc = _add(E, acc, P)
        P = _add(E, P, P)
        k >>= 1
    return acc


def scalar_mul(E: CurveFp, k: int, P: PointFp) -> PointFp:
    E.check(P)
    return _mul(E, k, P)


def point_order(E: CurveFp, P: PointFp, N: int) -> int:
    """Exact order of P, given any N with N*P = O (normally N = #E(F_p))."""
    E.check(P)
    if _mul(E, N, P) is not None:
        raise InconsistentOrderError(f"{N} does not annihilate {P} on {E}")
    d = N
    for q in factorize(N):
        while d % q == 0 and _mul(E, d // q, P) is None:
            d //= q
    return d


def points(E: CurveFp) -> list[PointFp]:
    """Every point of E(F_p), infinity first then by (x, y)."""
    p = E.p
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    out: list[PointFp] = [None]
    for x in range(p):
        for y in roots.get((x * x * x + E.a * x + E.b) % p, ()):
            out.append((x, y))
    return out


def ell_part_structure(E: CurveFp, ell: int) -> tuple[int, int]:
    """(e1, e2) with E(F_p)[ell^oo] = Z/ell^e1 x Z/ell^e2, e1 >= e2.

    Exhaustive: the ell-Sylow subgroup is materialised as the image of
    multiplication by the prime-to-ell cofactor, then |E[ell^k]| is counted
    for increasing k.
    """
    N = curve_order(E)
    v = 0
    while N % ell == 0:
        N //= ell
        v += 1
    if v == 0:
        return 0, 0
    cofactor = N
    sylow = {_mul(E, cofactor, X) for X in points(E)}
    exps = []
    for S in sylow:
        e = 0
        while S is not None:
            S = _mul(E, ell, S)
            e += 1
        exps.append(e)
    # |E[ell^k]| = ell^(min(k,e1) + min(k,e2)); e2 is the last k where this is ell^(2k)
    e2 = 0
    for k in range(1, v + 1):
        if sum(1 for e in exps if e <= k) == ell ** (2 * k):
            e2 = k
        else:
            break
    return v - e2, e2


def discrete_log(E: CurveFp, P: PointFp, Q: PointFp, n: int) -> int | None:
    """Smallest m in [0, n) with m*P = Q, where n is the order of P; None if Q is not in <P>.

    Baby-step giant-step.
    """
    E.check(P)
    E.check(Q)
    step = isqrt(n - 1) + 1 if n > 1 else 1
    baby: dict[PointFp, int] = {}
    R = None
    for j in range(step):
        baby.setdefault(R, j)
        R = _add(E, R, P)
    giant = neg(E, _mul(E, step, P))
    R = Q
    for i in range(step + 1):
        j = baby.get(R)
        if j is not None:
            m = (i * step + j) % n
            if _mul(E, m, P) == Q:
                return m
        R = _add(E, R, giant)
    return None
