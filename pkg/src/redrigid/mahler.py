"""Falling-factorial series psi(n) = sum_i a_i (n)_i and the self-map phi(n) = psi(n^2) of Z.

phi respects every congruence m = n (mod N) yet, for suitable coefficients,
agrees with no polynomial.  Coefficient lists are finite and explicit:
asking for psi(n) with n beyond the list is an error rather than an
implicit zero tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence, Tuple

from .errors import InsufficientCoefficientsError


def falling_factorial(n: int, i: int) -> int:
    """(n)_i = n (n-1) ... (n-i+1), any integer n."""
    out = 1
    for k in range(i):
        out *= n - k
    return out


@dataclass(frozen=True)
class MahlerSeries:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("need at least a_0")

    @classmethod
    def ones(cls, K: int) -> "MahlerSeries":
        return cls((1,) * (K + 1))

    @classmethod
    def parse(cls, text: str) -> "MahlerSeries":
        """``ones:K`` or an explicit comma list ``a0,a1,...``."""
        text = text.strip()
        if text.startswith("ones:"):
            return cls.ones(int(text[5:]))
        return cls(tuple(int(t) for t in text.split(",")))

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1


def psi_eval(s: MahlerSeries, n: int) -> int:
    if n < 0:
        raise ValueError("psi is only defined for n >= 0")
    if n > s.K:
        raise InsufficientCoefficientsError(f"psi({n}) needs a_0..a_{n}; series stops at a_{s.K}")
    # (n)_i vanishes for i > n; build (n)_i incrementally
    total, ff = 0, 1
    for i in range(n + 1):
        total += s.coeffs[i] * ff
        ff *= n - i
    return total


def phi_eval(s: MahlerSeries, n: int) -> int:
    return psi_eval(s, n * n)


def congruence_check(s: MahlerSeries, mod_max: int, n_max: int) -> list[tuple[int, int, int]]:
    """Triples (N, m, n) with m = n (mod N) but phi(m) != phi(n) (mod N), for 2 <= N <= mod_max."""
    if n_max * n_max > s.K:
        raise InsufficientCoefficientsError(f"n_max={n_max} needs K >= {n_max * n_max}")
    values = {n: phi_eval(s, n) for n in range(0, n_max + 1)}
    phi = lambda n: values[abs(n)]  # noqa: E731
    bad = []
    for N in range(2, mod_max + 1):
        for m in range(-n_max, n_max + 1):
            for n in range(m, n_max + 1, N):
                if (phi(m) - phi(n)) % N:
                    bad.append((N, m, n))
    return bad


def reduced_map(s: MahlerSeries, N: int) -> tuple[int, ...]:
    """phi mod N as a map Z/N -> Z/N, tabulated on representatives 0..N-1."""
    if N < 2:
        raise ValueError("N must be at least 2")
    if (N - 1) ** 2 > s.K:
        raise InsufficientCoefficientsError(f"reduced_map(N={N}) needs K >= {(N - 1) ** 2}")
    return tuple(phi_eval(s, r) % N for r in range(N))


def forward_differences(values: Sequence[int], order: int) -> list[int]:
    """[D^0 f(0), D^1 f(0), ..., D^order f(0)] from f(0..order)."""
    row = list(values[: order + 1])
    if len(row) < order + 1:
        raise InsufficientCoefficientsError("not enough values for the requested differences")
    out = [row[0]]
    for _ in range(order):
        row = [b - a for a, b in zip(row, row[1:])]
        out.append(row[0])
    return out


def psi_difference_selftest(s: MahlerSeries, kmax: int | None = None) -> bool:
    """D^k psi(0) = k! a_k for k <= kmax (default: every available k)."""
    kmax = s.K if kmax is None else kmax
    diffs = forward_differences([psi_eval(s, n) for n in range(kmax + 1)], kmax)
    return all(diffs[k] == factorial(k) * s.coeffs[k] for k in range(kmax + 1))


def nonpolynomiality_certificate(s: MahlerSeries, degree_max: int) -> bool:
    """True iff D^(d+1) phi(0) != 0 for every d <= degree_max.

    A nonzero (d+1)-st difference rules out phi being a polynomial of degree
    <= d.  Needs phi(0..degree_max+1), i.e. K >= (degree_max + 1)^2.
    """
    top = degree_max + 1
    if top * top > s.K:
        raise InsufficientCoefficientsError(f"degree_max={degree_max} needs K >= {top * top}")
    if not psi_difference_selftest(s, min(s.K, 64)):
        raise ArithmeticError("forward-difference self-test failed")
    diffs = forward_differences([phi_eval(s, n) for n in range(top + 1)], top)
    return all(diffs[d + 1] != 0 for d in range(degree_max + 1))
