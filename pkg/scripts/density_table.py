"""Densities of primes with ell | ord(P mod p) versus ell coprime to it, at growing bounds.

    python3 scripts/density_table.py --ells 2,3,5,7
"""

import argparse

from redrigid.curve_q import CurveQ, PointQ, good_primes
from redrigid.support import densities, scan_records


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="0,-2")
    ap.add_argument("--point", default="3,5")
    ap.add_argument("--ells", default="2,3,5")
    ap.add_argument("--bounds", default="1000,3000,10000,30000")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    a, b = (int(t) for t in args.curve.split(","))
    x, y = (int(t) for t in args.point.split(","))
    E, P = CurveQ(a, b), PointQ.affine(x, y)
    ells = [int(t) for t in args.ells.split(",")]
    bounds = [int(t) for t in args.bounds.split(",")]
    recs = scan_records(E, P, E, P, good_primes(E, max(bounds)).primes, args.workers)

    print("bound  " + "  ".join(f"{'l=' + str(l) + ' div':>10} {'cop':>6}" for l in ells))
    for B in bounds:
        sub = [r for r in recs if r.p <= B]
        cells = []
        for ell in ells:
            div, cop = densities(sub, ell)
            cells.append(f"{float(div):10.4f} {float(cop):6.4f}")
        print(f"{B:<6} " + "  ".join(cells))


if __name__ == "__main__":
    main()
