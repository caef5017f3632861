"""Eigenvalue-one lemma and H^1 annihilation over small matrix groups, with converse statistics."""

from redrigid.groups import matrices as M
from redrigid.groups.cohomology import h1_classes, lemma1_verify
from redrigid.groups.matrices import MatrixGroupSpec
from redrigid.groups.semidirect import converse_stats, lemma4_rows


def main():
    for ell in (2, 3, 5):
        G = MatrixGroupSpec.gl(2, ell)
        mode = "conjugacy" if ell < 5 else "linear"
        rows = lemma4_rows(G, mode)
        bad = sum(r.hyp and r.eig1 for r in rows)
        print(f"GL(2,F{ell}) [{mode}]: violations={bad}, {converse_stats(rows)}")

    T = M.mat([[1, 1], [0, 1]], 3)
    for name, G, tau in [
        ("<T> in GL(2,F3)", MatrixGroupSpec.generated(3, [T]), T),
        ("GL(2,F3)", MatrixGroupSpec.gl(2, 3), M.scalar(2, 2, 3)),
        ("<T,2I> in GL(2,F5)", MatrixGroupSpec.generated(5, [M.mat([[1, 1], [0, 1]], 5), M.scalar(2, 2, 5)]), M.scalar(2, 2, 5)),
    ]:
        r = h1_classes(G)
        print(f"{name}: |G|={G.order}, H^1 classes={r.count}, tau-1 kills H^1: {lemma1_verify(G, tau, r)}")


if __name__ == "__main__":
    main()
