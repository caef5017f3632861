import pytest

from redrigid.groups import matrices as M
from redrigid.groups.cohomology import Cocycle, coboundaries, cocycles, h1_classes, lemma1_verify
from redrigid.groups.matrices import MatrixGroupSpec

T = [[1, 1], [0, 1]]


def brute_cocycles(G):
    """Oracle: every function G -> F_l^n satisfying the cocycle condition (tiny groups only)."""
    from itertools import product

    vecs = [tuple(v) for v in M.vectors(G.n, G.modulus)]
    return sorted(
        vals for vals in product(vecs, repeat=G.order) if Cocycle(G, vals).satisfies_condition()
    )


def test_trivial_group():
    G = MatrixGroupSpec.generated(3, [M.identity(2)])
    r = h1_classes(G)
    assert r.count == 1 and r.n_cocycles == 1


def test_coprime_order_vanishes():
    # <2I> in GL(2,F5) has order 4, prime to 5
    G = MatrixGroupSpec.generated(5, [M.scalar(2, 2, 5)])
    assert G.order == 4
    assert h1_classes(G).count == 1


def test_unipotent_f2_pinned():
    G = MatrixGroupSpec.generated(2, [M.mat(T, 2)])
    r = h1_classes(G)
    assert (r.count, r.n_cocycles, r.n_coboundaries) == (1, 2, 2)
    assert cocycles(G) == brute_cocycles(G)


def test_unipotent_f3_against_oracle():
    G = MatrixGroupSpec.generated(3, [M.mat(T, 3)])
    assert cocycles(G) == brute_cocycles(G)
    r = h1_classes(G)
    assert r.count * r.n_coboundaries == r.n_cocycles
    assert r.count == 3


def test_all_cocycles_satisfy_condition():
    G = MatrixGroupSpec.gl(2, 3)
    for z in cocycles(G):
        assert Cocycle(G, z).satisfies_condition()


def test_coboundaries_form_subgroup():
    G = MatrixGroupSpec.generated(3, [M.mat(T, 3), M.scalar(2, 2, 5)])
    B = coboundaries(G)
    for b in B:
        assert Cocycle(G, b).satisfies_condition()
    for a in B:
        for b in B:
            assert tuple(M.vadd(u, v, 3) for u, v in zip(a, b)) in B


def test_gl23_h1_vanishes():
    assert h1_classes(MatrixGroupSpec.gl(2, 3)).count == 1


@pytest.mark.parametrize(
    "ell,gens,tau",
    [
        (3, [T], [[1, 0], [0, 1]]),
        (3, [T], T),
        (3, None, [[2, 0], [0, 2]]),
        (5, [T, [[2, 0], [0, 2]]], [[2, 0], [0, 2]]),
        (5, [[[2, 0], [0, 2]]], [[2, 0], [0, 2]]),
    ],
)
def test_tau_minus_one_kills_h1(ell, gens, tau):
    G = MatrixGroupSpec.gl(2, ell) if gens is None else MatrixGroupSpec.generated(ell, [M.mat(g, ell) for g in gens])
    assert lemma1_verify(G, tau)


def test_tau_check_rejects_non_central():
    G = MatrixGroupSpec.gl(2, 3)
    with pytest.raises(ValueError):
        lemma1_verify(G, T)
    H = MatrixGroupSpec.generated(3, [M.mat(T, 3)])
    with pytest.raises(ValueError):
        lemma1_verify(H, [[2, 0], [0, 2]])  # not in H
