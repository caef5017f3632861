"""Endomorphisms of SL(2, Z/p), found by extending generator images over the Cayley graph.

SL(2, Z/p) is generated by S = [[0, -1], [1, 0]] and T = [[1, 1], [0, 1]].
A candidate pair (A, B) of images is extended breadth-first from the
identity along right multiplication by S and T; every revisited element
must receive the same image, otherwise the pair is discarded.  A pair that
survives defines x s -> f(x) f(s) on every edge of the Cayley graph, hence a
homomorphism.  No presentation of the group is used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import ResourceError
from ..primes import is_prime
from . import matrices as M
from .matrices import Mat, MatrixGroupSpec

CENSUS_MAX_P = 7


class SL2:
    """SL(2, Z/p) with a precomputed multiplication table on element indices."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("p must be prime")
        self.p = p
        self.S = M.mat([[0, -1], [1, 0]], p)
        self.T = M.mat([[1, 1], [0, 1]], p)
        self.spec = MatrixGroupSpec.generated(p, [self.S, self.T])
        self.elements = self.spec.elements
        self.index = self.spec.index
        if len(self.elements) != p * (p * p - 1):
            raise AssertionError("S and T failed to generate SL(2, Z/p)")
        self.e = self.index[M.identity(2)]
        self.s = self.index[self.S]
        self.t = self.index[self.T]
        els = self.elements
        self.table = [[self.index[M.mul(a, b, p)] for b in els] for a in els]

    def __len__(self):
        return len(self.elements)

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != self.e:
            x = self.table[x][i]
            k += 1
        return k


@dataclass(frozen=True)
class EndoTable:
    group: SL2
    image: Tuple[int, ...]

    def __call__(self, x: Mat) -> Mat:
        return self.group.elements[self.image[self.group.index[x]]]

    def is_homomorphism(self) -> bool:
        t, img = self.group.table, self.image
        n = len(img)
        return all(img[t[x][y]] == t[img[x]][img[y]] for x in range(n) for y in range(n))

    def is_trivial(self) -> bool:
        return all(i == self.group.e for i in self.image)

    def is_bijective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def compose(self, other: "EndoTable") -> "EndoTable":
        """self after other."""
        return EndoTable(self.group, tuple(self.image[j] for j in other.image))


def extend(G: SL2, a: int, b: int) -> Optional[Tuple[int, ...]]:
    """Image table of the homomorphism S -> a, T -> b, or None if the pair does not extend."""
    t = G.table
    img = [-1] * len(G)
    img[G.e] = G.e
    queue = deque([G.e])
    edges = ((G.s, a), (G.t, b))
    while queue:
        x = queue.popleft()
        fx = img[x]
        for gen, gimg in edges:
            y = t[x][gen]
            fy = t[fx][gimg]
            if img[y] < 0:
                img[y] = fy
                queue.append(y)
            elif img[y] != fy:
                return None
    return tuple(img)


def enumerate_endos(p: int, group: SL2 | None = None) -> List[EndoTable]:
    """All endomorphisms of SL(2, Z/p), sorted by image table.

    Only images whose order divides that of the generator are tried; any
    homomorphism must satisfy this, so no endomorphism is lost.
    """
    if p <= 3:
        raise ValueError("the census is for p > 3")
    if p > CENSUS_MAX_P:
        raise ResourceError(f"census budget is p <= {CENSUS_MAX_P}")
    G = group or SL2(p)
    orders = [G.order_of(i) for i in range(len(G))]
    os_, ot = orders[G.s], orders[G.t]
    cand_s = [i for i in range(len(G)) if os_ % orders[i] == 0]
    cand_t = [i for i in range(len(G)) if ot % orders[i] == 0]
    found = set()
    for a in cand_s:
        for b in cand_t:
            img = extend(G, a, b)
            if img is not None:
                found.add(img)
    return [EndoTable(G, img) for img in sorted(found)]


@dataclass(frozen=True)
class Classification:
    kind: str  # "trivial" | "inner" | "other"
    g: Optional[Mat] = None


def classify_endo(e: EndoTable, gl: List[Mat] | None = None) -> Classification:
    """trivial, inner(g) for the first g in GL(2, Z/p) (lexicographic) with e = conj by g, or other."""
    G = e.group
    p = G.p
    if e.is_trivial():
        return Classification("trivial")
    target_s, target_t = e(G.S), e(G.T)
    for g in gl if gl is not None else M.all_gl(2, p):
        gi = M.inverse(g, p)
        if M.mul(M.mul(g, G.S, p), gi, p) != target_s:
            continue
        if M.mul(M.mul(g, G.T, p), gi, p) != target_t:
            continue
        if all(M.mul(M.mul(g, x, p), gi, p) == e(x) for x in G.elements):
            return Classification("inner", g)
    return Classification("other")


def conjugation_maps(G: SL2, gl: List[Mat] | None = None) -> set:
    """Distinct image tables of x -> g x g^-1 over g in GL(2, Z/p), computed directly."""
    p = G.p
    out = set()
    for g in gl if gl is not None else M.all_gl(2, p):
        gi = M.inverse(g, p)
        out.add(tuple(G.index[M.mul(M.mul(g, x, p), gi, p)] for x in G.elements))
    return out
