from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from redrigid import fp
from redrigid.curve_q import O, PointQ, good_primes, neg_q, reduce_point, scalar_mul_q
from redrigid.errors import HypothesisViolation
from redrigid.support import (
    ReductionRecord,
    ap_coincidence,
    density_coprime,
    density_divisible,
    infer_relation,
    record_at,
    scan_records,
    scan_support,
)

from conftest import E_11, E_M11, E_M2, P0, Q0

# regression fixtures, frozen from the first full run and cross-checked by the
# brute-force oracles below
FIRST_CROSS_COUNTEREXAMPLE = 5
DENSITY_FIXTURES = {
    2: (Fraction(569, 1227), Fraction(658, 1227)),
    3: (Fraction(532, 1227), Fraction(695, 1227)),
}
AP_FIXTURE_M2_VS_11 = Fraction(9, 1226)
AP_FIXTURE_11_VS_M11 = Fraction(8, 1225)


def order_by_repeated_addition(Ep, X):
    """Oracle independent of group orders: add X to itself until the identity appears."""
    k, R = 1, X
    while R is not None:
        R = fp.add(Ep, R, X)
        k += 1
    return k


def test_same_curve_multiple_has_no_counterexample():
    Q = scalar_mul_q(E_M2, 2, P0)
    records, verdict = scan_support(E_M2, P0, E_M2, Q, 10**4)
    assert verdict.counterexamples == ()
    assert verdict.inferred_m == 2
    assert verdict.scanned == len(records) == len(good_primes(E_M2, 10**4))
    assert [r.p for r in records] == sorted(r.p for r in records)


def test_torsion_input_rejected():
    with pytest.raises(HypothesisViolation):
        scan_support(E_M2, P0, E_M2, O, 100)


def test_cross_curve_counterexample():
    records, verdict = scan_support(E_M2, P0, E_11, Q0, 10**3)
    assert verdict.counterexamples
    assert verdict.counterexamples[0] == FIRST_CROSS_COUNTEREXAMPLE
    assert verdict.inferred_m is None
    # the oracle at the pinned prime: ord(P mod 5) = 2, ord(Q mod 5) = 3 or 9
    E1, E2 = E_M2.reduce(5), E_11.reduce(5)
    o1 = order_by_repeated_addition(E1, reduce_point(E_M2, P0, 5))
    o2 = order_by_repeated_addition(E2, reduce_point(E_11, Q0, 5))
    assert o1 % o2 != 0


def test_records_self_consistent():
    records, _ = scan_support(E_M2, P0, E_11, Q0, 2000)
    for r in records:
        assert r.is_consistent()
        assert record_at(E_M2, P0, E_11, Q0, r.p) == r
    for r in records[:80]:
        E1, E2 = E_M2.reduce(r.p), E_11.reduce(r.p)
        assert r.ord1 == order_by_repeated_addition(E1, reduce_point(E_M2, P0, r.p))
        assert r.ord2 == order_by_repeated_addition(E2, reduce_point(E_11, Q0, r.p))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_multiples_always_divide(k):
    Q = scalar_mul_q(E_M2, k, P0)
    records, verdict = scan_support(E_M2, P0, E_M2, Q, 3000)
    assert all(r.divides for r in records)
    assert verdict.inferred_m == k


@pytest.mark.parametrize("k", [k for k in range(-10, 11) if k != 0])
def test_infer_relation_recovers_k(k):
    for E, P in [(E_M2, P0), (E_11, Q0), (E_M11, PointQ.affine(1, 1))]:
        Q = scalar_mul_q(E, k, P)
        records = scan_records(E, P, E, Q, good_primes(E, 400).primes)
        assert infer_relation(E, P, Q, records) == k


def test_infer_relation_examples():
    records = scan_records(E_M2, P0, E_M2, P0, good_primes(E_M2, 500).primes)
    assert infer_relation(E_M2, P0, P0, records) == 1
    Q = scalar_mul_q(E_M2, -3, P0)
    records = scan_records(E_M2, P0, E_M2, Q, good_primes(E_M2, 500).primes)
    assert infer_relation(E_M2, P0, Q, records) == -3


def test_infer_relation_absent_without_integer_relation():
    # P = m (2P) has no integer solution m
    Q2 = scalar_mul_q(E_M2, 2, P0)
    records = scan_records(E_M2, Q2, E_M2, P0, good_primes(E_M2, 2000).primes)
    assert infer_relation(E_M2, Q2, P0, records) is None
    assert infer_relation(E_M2, P0, Q2, []) is None


def test_density_examples_and_complement():
    with pytest.raises(ValueError):
        density_divisible(E_M2, P0, 2, 4)
    for ell, (div, cop) in DENSITY_FIXTURES.items():
        d = density_divisible(E_M2, P0, ell, 10**4)
        c = density_coprime(E_M2, P0, ell, 10**4)
        assert (d, c) == (div, cop)
        assert d + c == 1
        assert d >= Fraction(1, 50) and c >= Fraction(1, 50)


def test_density_fixtures_against_oracle():
    """Recompute the pinned densities with repeated-addition orders and brute point counts."""
    primes = good_primes(E_M2, 10**4).primes
    hits = {2: 0, 3: 0}
    for p in primes:
        o = order_by_repeated_addition(E_M2.reduce(p), reduce_point(E_M2, P0, p))
        for ell in hits:
            hits[ell] += o % ell == 0
    for ell, (div, _) in DENSITY_FIXTURES.items():
        assert Fraction(hits[ell], len(primes)) == div


def test_density_rejects_torsion():
    with pytest.raises(HypothesisViolation):
        density_coprime(E_M2, O, 2, 100)


def test_ap_coincidence():
    assert ap_coincidence(E_M2, E_M2, 2000) == 1
    f = ap_coincidence(E_11, E_M11, 10**4)
    assert f == AP_FIXTURE_11_VS_M11 and f < Fraction(1, 5)
    g = ap_coincidence(E_M2, E_11, 10**4)
    assert g == AP_FIXTURE_M2_VS_11 and 0 < g < 1


def test_ap_oracle_small_range():
    # brute-force point counts for primes below 300
    for p in good_primes((E_M2, E_11), 300).primes:
        for E in (E_M2, E_11):
            n = 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - E.a * x - E.b) % p == 0)
            assert p + 1 - n == record_at(E, P0 if E == E_M2 else Q0, E, P0 if E == E_M2 else Q0, p).ap1


def test_worker_count_does_not_change_records():
    primes = good_primes((E_M2, E_11), 3000).primes
    one = scan_records(E_M2, P0, E_11, Q0, primes, workers=1)
    many = scan_records(E_M2, P0, E_11, Q0, primes, workers=3)
    assert one == many


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(good_primes(E_M2, 600).primes), min_size=1, max_size=30, unique=True))
def test_partitioned_merge_equals_serial(subset):
    serial = scan_records(E_M2, P0, E_M2, neg_q(P0), subset)
    half = len(subset) // 2
    merged = sorted(
        scan_records(E_M2, P0, E_M2, neg_q(P0), subset[:half]) + scan_records(E_M2, P0, E_M2, neg_q(P0), subset[half:]),
        key=lambda r: r.p,
    )
    assert merged == serial
    assert all(isinstance(r, ReductionRecord) and r.divides for r in serial)
