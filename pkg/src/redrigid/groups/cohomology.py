"""Brute-force H^1(G, F_l^n) for finite matrix groups G acting naturally on column vectors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple

from ..errors import ResourceError
from . import matrices as M
from .matrices import Mat, MatrixGroupSpec, Vec

H1_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class Cocycle:
    group: MatrixGroupSpec
    values: Tuple[Vec, ...]  # aligned with group.elements

    @property
    def dim(self) -> int:
        return self.group.n

    def __call__(self, g: Mat) -> Vec:
        return self.values[self.group.index[g]]

    def satisfies_condition(self) -> bool:
        """c(g1 g2) = c(g1) + g1 c(g2) for all pairs."""
        G, m = self.group, self.group.modulus
        for g1, v1 in zip(G.elements, self.values):
            for g2, v2 in zip(G.elements, self.values):
                if self(M.mul(g1, g2, m)) != M.vadd(v1, M.apply(g1, v2, m), m):
                    return False
        return True


@dataclass(frozen=True)
class H1Result:
    count: int
    representatives: Tuple[Cocycle, ...]
    n_cocycles: int
    n_coboundaries: int


def _extend(G: MatrixGroupSpec, gen_values) -> Optional[Tuple[Vec, ...]]:
    """Extend c(s) on generators to all of G by c(x s) = c(x) + x c(s); None on inconsistency."""
    m = G.modulus
    vals: list = [None] * G.order
    e = G.index[M.identity(G.n)]
    vals[e] = M.zero_vec(G.n)
    queue = deque([e])
    gens = [(G.index[s], s, v) for s, v in zip(G.generators, gen_values)]
    while queue:
        i = queue.popleft()
        x, cx = G.elements[i], vals[i]
        for _, s, cs in gens:
            j = G.index[M.mul(x, s, m)]
            v = M.vadd(cx, M.apply(x, cs, m), m)
            if vals[j] is None:
                vals[j] = v
                queue.append(j)
            elif vals[j] != v:
                return None
    return tuple(vals)


def coboundaries(G: MatrixGroupSpec) -> set:
    """All maps g -> (g - 1) m, as value tuples."""
    ell, n = G.modulus, G.n
    out = set()
    for v in M.vectors(n, ell):
        out.add(tuple(M.vadd(M.apply(g, v, ell), M.vneg(v, ell), ell) for g in G.elements))
    return out


def cocycles(G: MatrixGroupSpec) -> List[Tuple[Vec, ...]]:
    ell, n = G.modulus, G.n
    cost = G.order * ell ** (n * len(G.generators))
    if cost > H1_BUDGET:
        raise ResourceError(f"cocycle enumeration cost {cost} exceeds budget {H1_BUDGET}")
    out = []
    vecs = [tuple(v) for v in M.vectors(n, ell)]
    for assignment in product(vecs, repeat=len(G.generators)):
        vals = _extend(G, assignment)
        if vals is not None and Cocycle(G, vals).satisfies_condition():
            out.append(vals)
    return sorted(set(out))


def h1_classes(G: MatrixGroupSpec) -> H1Result:
    """Number of classes in H^1(G, F_l^n) and the least cocycle of each class."""
    ell = G.modulus
    Z = cocycles(G)
    B = coboundaries(G)
    assigned = set()
    reps = []
    for z in Z:
        if z in assigned:
            continue
        reps.append(Cocycle(G, z))
        for b in B:
            assigned.add(tuple(M.vadd(u, w, ell) for u, w in zip(z, b)))
    return H1Result(len(reps), tuple(reps), len(Z), len(B))


def lemma1_verify(G: MatrixGroupSpec, tau, result: H1Result | None = None) -> bool:
    """For central tau, is g -> (tau - 1) c(g) a coboundary for every class representative c?"""
    ell, n = G.modulus, G.n
    tau = M.mat(tau, ell)
    if tau not in G.index:
        raise ValueError("tau must be an element of G")
    if any(M.mul(tau, s, ell) != M.mul(s, tau, ell) for s in G.generators):
        raise ValueError("tau is not central in G")
    result = result or h1_classes(G)
    B = coboundaries(G)
    d = M.sub(tau, M.identity(n), ell)
    return all(tuple(M.apply(d, v, ell) for v in c.values) in B for c in result.representatives)
