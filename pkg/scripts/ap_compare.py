"""How often do Frobenius traces agree for non-isogenous curves?  Pairwise table."""

import argparse
from itertools import combinations

from redrigid.curve_q import CurveQ
from redrigid.support import ap_coincidence

CURVES = {"x^3-2": CurveQ(0, -2), "x^3+x+1": CurveQ(1, 1), "x^3-x+1": CurveQ(-1, 1), "x^3+2": CurveQ(0, 2)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=10000)
    args = ap.parse_args()
    for (n1, E1), (n2, E2) in combinations(CURVES.items(), 2):
        f = ap_coincidence(E1, E2, args.pmax)
        print(f"{n1:>8} vs {n2:<8} {str(f):>12}  {float(f):.4f}")


if __name__ == "__main__":
    main()
