"""Support scans on y^2 = x^3 - 2 with P = (3,5): Q = mP for a few m, plus a cross-curve pair.

    python3 scripts/support_scan.py --pmax 10000 --workers 4
"""

import argparse
import time

from redrigid.curve_q import CurveQ, PointQ, good_primes, scalar_mul_q
from redrigid.support import infer_relation, scan_records, verdict_from

E = CurveQ(0, -2)
P = PointQ.affine(3, 5)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=10000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    primes = good_primes(E, args.pmax).primes
    print(f"{'Q':>10} {'primes':>7} {'bad':>5} {'first bad':>9} {'m':>4} {'sec':>6}")
    for m in (2, 3, -1, 5):
        t0 = time.perf_counter()
        Q = scalar_mul_q(E, m, P)
        recs = scan_records(E, P, E, Q, primes, args.workers)
        v = verdict_from(E, P, E, Q, recs)
        bad = v.counterexamples
        m_hat = infer_relation(E, P, Q, recs)
        print(f"{f'{m}P':>10} {len(recs):>7} {len(bad):>5} {bad[0] if bad else '-':>9} "
              f"{m_hat if m_hat is not None else '-':>4} {time.perf_counter() - t0:6.2f}")

    # P on y^2 = x^3 - 2 against (0,1) on y^2 = x^3 + x + 1: no relation expected
    E2, Q2 = CurveQ(1, 1), PointQ.affine(0, 1)
    recs = scan_records(E, P, E2, Q2, good_primes((E, E2), args.pmax).primes, args.workers)
    v = verdict_from(E, P, E2, Q2, recs)
    print(f"cross-curve: {len(v.counterexamples)} of {len(recs)} primes break divisibility, "
          f"first at p = {v.counterexamples[0]}")


if __name__ == "__main__":
    main()
