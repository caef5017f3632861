"""Endomorphism census of SL(2, Z/p) for p = 5, 7, with classification of every map."""

import time
from collections import Counter

from redrigid.groups import matrices as M
from redrigid.groups.endos import SL2, classify_endo, conjugation_maps, enumerate_endos


def main():
    for p in (5, 7):
        t0 = time.perf_counter()
        G = SL2(p)
        found = enumerate_endos(p, G)
        gl = M.all_gl(2, p)
        kinds = Counter(classify_endo(e, gl).kind for e in found)
        conj = len(conjugation_maps(G, gl))
        print(f"p={p}: |SL2|={len(G)}, endomorphisms={len(found)}, {dict(kinds)}, "
              f"GL conjugation maps={conj}, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
