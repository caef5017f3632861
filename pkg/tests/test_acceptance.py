"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line,
printed in the terminal summary (and immediately with ``-s``)."""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from redrigid import reports
from redrigid.curve_q import CurveQ, good_primes, scalar_mul_q
from redrigid.fp import curve_order
from redrigid.groups import matrices as M
from redrigid.groups.cohomology import h1_classes, lemma1_verify
from redrigid.groups.endos import SL2, classify_endo, conjugation_maps, enumerate_endos
from redrigid.groups.matrices import MatrixGroupSpec
from redrigid.groups.semidirect import lemma4_rows
from redrigid.mahler import (
    MahlerSeries,
    congruence_check,
    forward_differences,
    nonpolynomiality_certificate,
    psi_eval,
)
from redrigid.support import densities, infer_relation, scan_records, verdict_from
from redrigid.weil import injectivity_threshold_check

from conftest import ACCEPTANCE_LINES, E_11, E_M11, E_M2, P0, Q0


@contextmanager
def criterion(number, title, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and limit is not None and dt >= limit:
            ok = False
            title += f" [over {limit}s budget]"
        line = f"{'PASS' if ok else 'FAIL'}  {number:>2}. {title} ({dt:.2f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert limit is None or dt < limit, f"took {dt:.1f}s, budget {limit}s"


def test_01_hasse_and_weak_interval():
    with criterion(1, "Hasse |N-(p+1)| <= 2 sqrt p and p +- 4 sqrt p, three curves, p < 10^4", 60):
        for E in (E_M2, E_11, E_M11):
            for p in good_primes(E, 10**4 - 1).primes:
                n = curve_order(E.reduce(p))
                t = n - (p + 1)
                assert t * t <= 4 * p, (E, p, n)  # |t| <= 2 sqrt p, exactly
                d = n - p
                assert d * d <= 16 * p, (E, p, n)  # |N - p| <= 4 sqrt p, exactly


def test_02_support_positive():
    with criterion(2, "support scan with Q = 2P and 3P: clean, relation m = 2 and 3"):
        primes = good_primes(E_M2, 10**4 - 1).primes
        for m in (2, 3):
            Q = scalar_mul_q(E_M2, m, P0)
            recs = scan_records(E_M2, P0, E_M2, Q, primes)
            v = verdict_from(E_M2, P0, E_M2, Q, recs)
            assert v.counterexamples == ()
            assert infer_relation(E_M2, P0, Q, recs) == m


FIRST_CROSS_COUNTEREXAMPLE = 5


def test_03_support_negative():
    with criterion(3, "cross-curve scan has counterexample primes, first is pinned"):
        E2 = CurveQ(1, 1)
        recs = scan_records(E_M2, P0, E2, Q0, good_primes((E_M2, E2), 10**3 - 1).primes)
        v = verdict_from(E_M2, P0, E2, Q0, recs)
        assert len(v.counterexamples) >= 1
        assert v.counterexamples[0] == FIRST_CROSS_COUNTEREXAMPLE


def test_04_weil_pigeonhole():
    with criterion(4, "upper < 2*lower above 9*2^(4g): g=1 to 10^4, g=2 to 10^5", 5):
        assert injectivity_threshold_check(1, 10**4)
        assert injectivity_threshold_check(2, 10**5)


def test_05_eigenvalue_one():
    with criterion(5, "eigenvalue-one lemma on GL(2,F2) and GL(2,F3), modes agree", 60):
        rows = lemma4_rows(MatrixGroupSpec.gl(2, 2), "conjugacy")
        assert not [r for r in rows if r.hyp and r.eig1]
        G3 = MatrixGroupSpec.gl(2, 3)
        conj, lin = lemma4_rows(G3, "conjugacy"), lemma4_rows(G3, "linear")
        assert len(conj) == len(lin) == 48
        for a, b in zip(conj, lin):
            assert a.sigma == b.sigma and a.hyp == b.hyp
            assert not (a.hyp and a.eig1)


def _census(p):
    G = SL2(p)
    found = enumerate_endos(p, G)
    gl = M.all_gl(2, p)
    nontrivial = [e for e in found if not e.is_trivial()]
    for e in nontrivial:
        assert e.is_bijective()
        assert classify_endo(e, gl).kind == "inner"
    assert len(nontrivial) == len(conjugation_maps(G, gl))
    return len(found)


def test_06_endomorphism_census():
    with criterion(6, "SL(2,Z/5) census: nontrivial maps bijective, inner, count = conjugation maps"):
        assert _census(5) == 121
    with criterion(6, "same census for SL(2,Z/7) within 5 minutes", 300):
        assert _census(7) == 337


CENTRAL_TAU_CASES = [
    ("<T> in GL(2,F3), tau = T", 3, [[[1, 1], [0, 1]]], [[1, 1], [0, 1]]),
    ("GL(2,F3), tau = -I", 3, None, [[2, 0], [0, 2]]),
    ("<T, 2I> in GL(2,F5), tau = 2I", 5, [[[1, 1], [0, 1]], [[2, 0], [0, 2]]], [[2, 0], [0, 2]]),
    ("{I, 2I, 4I, 3I} in GL(2,F5), tau = 2I", 5, [[[2, 0], [0, 2]]], [[2, 0], [0, 2]]),
]


def test_07_central_tau_kills_h1():
    with criterion(7, f"tau - 1 kills H^1 on {len(CENTRAL_TAU_CASES)} groups with central tau != I"):
        for name, ell, gens, tau in CENTRAL_TAU_CASES:
            G = MatrixGroupSpec.gl(2, ell) if gens is None else MatrixGroupSpec.generated(ell, [M.mat(g, ell) for g in gens])
            assert M.mat(tau, ell) != M.identity(2)
            assert lemma1_verify(G, tau, h1_classes(G)), name


PINNED_DENSITIES = {
    2: (Fraction(569, 1227), Fraction(658, 1227)),
    3: (Fraction(532, 1227), Fraction(695, 1227)),
}


def test_08_densities():
    with criterion(8, "densities for ell = 2, 3 are >= 0.02, sum to 1, match pinned values"):
        recs = scan_records(E_M2, P0, E_M2, P0, good_primes(E_M2, 10**4 - 1).primes)
        for ell, pinned in PINNED_DENSITIES.items():
            div, cop = densities(recs, ell)
            assert div >= Fraction(1, 50) and cop >= Fraction(1, 50)
            assert div + cop == 1
            assert (div, cop) == pinned


def test_09_mahler():
    with criterion(9, "all-ones series: psi head, congruences, non-polynomial, differences", 5):
        s = MahlerSeries.ones(169)
        assert [psi_eval(s, n) for n in range(5)] == [1, 2, 5, 16, 65]
        assert congruence_check(s, 30, 7) == []
        assert nonpolynomiality_certificate(s, 12)
        diffs = forward_differences([psi_eval(s, n) for n in range(9)], 8)
        assert diffs == [math.factorial(k) * s.coeffs[k] for k in range(9)]


def test_10_determinism(tmp_path):
    from redrigid.cli import cached_scan

    with criterion(10, "1 vs 8 workers byte-identical CSV; resumed scan equals cold scan"):
        Q = scalar_mul_q(E_M2, 2, P0)
        for E2, Q2 in ((E_M2, Q), (E_11, Q0)):
            primes = good_primes((E_M2, E2), 10**4 - 1).primes
            one = reports.records_to_csv(scan_records(E_M2, P0, E2, Q2, primes, workers=1))
            eight = reports.records_to_csv(scan_records(E_M2, P0, E2, Q2, primes, workers=8))
            assert one.encode() == eight.encode()
        cache = tmp_path / "resume.csv"
        cached_scan(E_M2, P0, E_M2, Q, 3000, cache=cache)
        resumed = cached_scan(E_M2, P0, E_M2, Q, 10**4 - 1, workers=8, cache=cache)
        cold = cached_scan(E_M2, P0, E_M2, Q, 10**4 - 1)
        assert reports.records_to_csv(resumed).encode() == reports.records_to_csv(cold).encode()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
