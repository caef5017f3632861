"""Prime scans for the support problem: do orders of Q mod p divide orders of P mod p?

A scan walks the good primes up to a bound and records, per prime, the
group orders, the reduction orders of P and Q, and the Frobenius traces.
Work is split into contiguous prime chunks; the merge sorts by p, so the
result does not depend on the worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import fp
from .curve_q import (
    CurveQ,
    PointQ,
    _add_affine,
    good_primes,
    is_torsion,
    reduce_point,
)
from .errors import HypothesisViolation
from .primes import crt_pair

log = logging.getLogger(__name__)

# search window for an integer relation Q = mP is |m| <= min(lcm of ord1, 2^64)
RELATION_CAP = 1 << 64


@dataclass(frozen=True)
class ReductionRecord:
    p: int
    n1: int
    ord1: int
    n2: int
    ord2: int
    divides: bool
    ap1: int
    ap2: int

    def is_consistent(self) -> bool:
        return (
            self.n1 % self.ord1 == 0
            and self.n2 % self.ord2 == 0
            and self.divides == (self.ord1 % self.ord2 == 0)
            and self.ap1 == self.p + 1 - self.n1
            and self.ap2 == self.p + 1 - self.n2
            and 4 * self.p >= max(self.ap1 * self.ap1, self.ap2 * self.ap2)
        )


@dataclass(frozen=True)
class SupportVerdict:
    counterexamples: tuple[int, ...]
    inferred_m: Optional[int]
    scanned: int

    @property
    def clean(self) -> bool:
        return not self.counterexamples


def _reduction_order(E: CurveQ, P: PointQ, p: int) -> tuple[int, int]:
    Ep = E.reduce(p)
    n = fp.curve_order(Ep)
    return n, fp.point_order(Ep, reduce_point(E, P, p), n)


def record_at(E1: CurveQ, P: PointQ, E2: CurveQ, Q: PointQ, p: int) -> ReductionRecord:
    n1, ord1 = _reduction_order(E1, P, p)
    n2, ord2 = _reduction_order(E2, Q, p)
    return ReductionRecord(p, n1, ord1, n2, ord2, ord1 % ord2 == 0, p + 1 - n1, p + 1 - n2)


def _records_chunk(args) -> list[ReductionRecord]:
    E1, P, E2, Q, primes = args
    return [record_at(E1, P, E2, Q, p) for p in primes]


def _chunks(items: Sequence[int], count: int) -> list[Sequence[int]]:
    count = max(1, min(count, len(items)))
    size = -(-len(items) // count) if items else 0
    return [items[i : i + size] for i in range(0, len(items), size)] if items else []


def scan_records(
    E1: CurveQ, P: PointQ, E2: CurveQ, Q: PointQ, primes: Iterable[int], workers: int = 1
) -> list[ReductionRecord]:
    """One ReductionRecord per prime, sorted by p, independent of ``workers``."""
    primes = sorted(primes)
    if workers <= 1 or len(primes) < 2:
        out = _records_chunk((E1, P, E2, Q, primes))
    else:
        # several chunks per worker so large primes do not all land on one process
        jobs = [(E1, P, E2, Q, c) for c in _chunks(primes, workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = [r for chunk in pool.map(_records_chunk, jobs) for r in chunk]
    out.sort(key=lambda r: r.p)
    return out


def _require_non_torsion(E: CurveQ, P: PointQ, name: str) -> None:
    if is_torsion(E, P):
        raise HypothesisViolation(f"{name} = ({P}) is a torsion point; infinite order is required")


def verdict_from(E1: CurveQ, P: PointQ, E2: CurveQ, Q: PointQ, records: Sequence[ReductionRecord]) -> SupportVerdict:
    bad = tuple(r.p for r in records if not r.divides)
    m = None
    if not bad and E1 == E2:
        m = infer_relation(E1, P, Q, records)
    return SupportVerdict(bad, m, len(records))


def scan_support(
    E1: CurveQ,
    P: PointQ,
    E2: CurveQ,
    Q: PointQ,
    bound: int,
    workers: int = 1,
) -> tuple[list[ReductionRecord], SupportVerdict]:
    """Scan every common good prime <= bound; same-curve scans are the E1 == E2 case."""
    _require_non_torsion(E1, P, "P")
    _require_non_torsion(E2, Q, "Q")
    primes = good_primes((E1, E2), bound).primes
    records = scan_records(E1, P, E2, Q, primes, workers)
    return records, verdict_from(E1, P, E2, Q, records)


def _bits(pt) -> int:
    x, y = pt
    return max(x.numerator.bit_length(), x.denominator.bit_length(),
               y.numerator.bit_length(), y.denominator.bit_length())


def _mul_bounded(E: CurveQ, m: int, P: PointQ, max_bits: int):
    """m*P in affine Fractions, or the string "overflow" once a partial multiple outgrows max_bits.

    Left-to-right double-and-add, so every partial result is floor(m/2^j)*P
    (give or take P), whose height is at most that of m*P up to a curve constant.
    """
    base = P.to_affine()
    if m < 0:
        m, base = -m, (base[0], -base[1])
    acc = None
    for bit in bin(m)[2:]:
        acc = _add_affine(E.a, acc, acc)
        if bit == "1":
            acc = _add_affine(E.a, acc, base)
        if acc is not None and _bits(acc) > max_bits:
            return "overflow"
    return acc


def infer_relation(E: CurveQ, P: PointQ, Q: PointQ, records: Sequence[ReductionRecord]) -> Optional[int]:
    """Recover m with Q = mP from the residues of m mod ord(P mod p); None if there is none.

    Each record contributes m mod ord1 via a discrete log of Q mod p to the
    base P mod p; the congruences are merged by CRT.  The representative of
    least absolute value (within the cap) is returned only after the rational
    identity mP = Q has been checked exactly.
    """
    if not records:
        return None
    r, L = 0, 1
    for rec in records:
        Ep = E.reduce(rec.p)
        Pp, Qp = reduce_point(E, P, rec.p), reduce_point(E, Q, rec.p)
        k = fp.discrete_log(Ep, Pp, Qp, rec.ord1)
        if k is None:
            return None
        merged = crt_pair(r, L, k, rec.ord1)
        if merged is None:
            return None
        r, L = merged
    cap = min(L, RELATION_CAP)
    candidates = sorted({r, r - L}, key=lambda m: (abs(m), m))
    if Q.is_identity:
        target_bits = 0
    else:
        target_bits = _bits(Q.to_affine())
    # a true multiple's partial products never exceed Q's height by more than a curve constant
    max_bits = 4 * target_bits + 4096
    for m in candidates:
        if abs(m) > cap:
            continue
        got = _mul_bounded(E, m, P, max_bits)
        if got == "overflow":
            log.info("candidate m=%d rejected: multiple outgrows Q's height", m)
            continue
        if got == Q.to_affine():
            return m
    return None


def reduction_orders(E: CurveQ, P: PointQ, bound: int, workers: int = 1) -> list[ReductionRecord]:
    _require_non_torsion(E, P, "P")
    primes = good_primes(E, bound).primes
    if not primes:
        raise ValueError(f"no good primes <= {bound} for {E}")
    return scan_records(E, P, E, P, primes, workers)


def density_divisible(E: CurveQ, P: PointQ, ell: int, bound: int, workers: int = 1) -> Fraction:
    """Fraction of good p <= bound where ell divides the order of P mod p."""
    recs = reduction_orders(E, P, bound, workers)
    return Fraction(sum(1 for r in recs if r.ord1 % ell == 0), len(recs))


def density_coprime(E: CurveQ, P: PointQ, ell: int, bound: int, workers: int = 1) -> Fraction:
    """Fraction of good p <= bound where the order of P mod p is prime to ell."""
    recs = reduction_orders(E, P, bound, workers)
    return Fraction(sum(1 for r in recs if r.ord1 % ell != 0), len(recs))


def densities(records: Sequence[ReductionRecord], ell: int) -> tuple[Fraction, Fraction]:
    """(divisible, coprime) computed from an existing same-point scan."""
    hit = sum(1 for r in records if r.ord1 % ell == 0)
    return Fraction(hit, len(records)), Fraction(len(records) - hit, len(records))


def trace(E: CurveQ, p: int) -> int:
    return p + 1 - fp.curve_order(E.reduce(p))


def ap_coincidence(E1: CurveQ, E2: CurveQ, bound: int) -> Fraction:
    """Fraction of common good primes p <= bound with a_p(E1) = a_p(E2)."""
    primes = good_primes((E1, E2), bound).primes
    if not primes:
        raise ValueError(f"no common good primes <= {bound}")
    same = sum(1 for p in primes if trace(E1, p) == trace(E2, p))
    return Fraction(same, len(primes))


def hasse_ok(p: int, n: int) -> bool:
    """|n - (p + 1)| <= 2 sqrt(p), exactly."""
    return (n - p - 1) ** 2 <= 4 * p
