"""The group (H1 + H2) x| G with H1, H2 two copies of F_l^n, and the eigenvalue-1 lemma.

Multiplication law
------------------
Elements are triples (h1, h2, g).  With h = (h1, h2)::

    (h, g) * (k, f) = (f.h + k, f g)

so the G coordinate composes in the opposite order to matrix
multiplication (equivalently: matrices act on row vectors from the right).
This is the convention under which the conjugation identity

    (h', r)(h1, s)(h', r)^-1 = (r^-1 (h1 + (s - 1) h'), r s r^-1)

holds verbatim, with every product in the second coordinate taken in the
group (H1 + H2) x| G itself; see :func:`g_mul`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional

from ..errors import ResourceError
from . import matrices as M
from .matrices import Mat, MatrixGroupSpec, Vec

OMEGA_BUDGET = 10**6


@dataclass(frozen=True)
class SemidirectElement:
    h1: Vec
    h2: Vec
    g: Mat
    ell: int

    @property
    def n(self) -> int:
        return len(self.g)

    @classmethod
    def identity(cls, n: int, ell: int) -> "SemidirectElement":
        z = M.zero_vec(n)
        return cls(z, z, M.identity(n), ell)


def g_mul(a: Mat, b: Mat, ell: int) -> Mat:
    """Product of G coordinates inside the semidirect product: a * b = b a as matrices."""
    return M.mul(b, a, ell)


def semidirect_mul(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    if x.ell != y.ell or x.n != y.n or len(x.h1) != x.n or len(y.h1) != y.n:
        raise ValueError("semidirect factors must share modulus and dimension")
    ell, f = x.ell, y.g
    return SemidirectElement(
        M.vadd(M.apply(f, x.h1, ell), y.h1, ell),
        M.vadd(M.apply(f, x.h2, ell), y.h2, ell),
        M.mul(f, x.g, ell),
        ell,
    )


def semidirect_inv(x: SemidirectElement) -> SemidirectElement:
    ell = x.ell
    gi = M.inverse(x.g, ell)
    return SemidirectElement(
        M.vneg(M.apply(gi, x.h1, ell), ell), M.vneg(M.apply(gi, x.h2, ell), ell), gi, ell
    )


def conjugate(y: SemidirectElement, x: SemidirectElement) -> SemidirectElement:
    """y x y^-1."""
    return semidirect_mul(semidirect_mul(y, x), semidirect_inv(y))


# -- flat encoding used by the exhaustive search: (h1 + h2 as one tuple, g) --

def _fmul(x, y, ell):
    (h, g), (k, f) = x, y
    return M.vadd(M.apply_block(f, h, ell), k, ell), M.mul(f, g, ell)


def _finv(x, ell):
    h, g = x
    gi = M.inverse(g, ell)
    return M.vneg(M.apply_block(gi, h, ell), ell), gi


@dataclass
class Lemma4Row:
    sigma: Mat
    hyp: bool
    eig1: bool
    witness: Optional[Vec] = None  # an h1 whose (h1, sigma) meets no (h2, tau); set when hyp is False


def _conjugacy_classes(spec: MatrixGroupSpec):
    """Class id for every element of Omega, via orbits under conjugation by generators."""
    ell, n = spec.modulus, spec.n
    size = spec.order * ell ** (2 * n)
    if size > OMEGA_BUDGET:
        raise ResourceError(
            f"|Omega| = {size} exceeds the conjugacy-mode budget {OMEGA_BUDGET}; use linear mode"
        )
    zero = M.zero_vec(2 * n)
    e = M.identity(n)
    gens = [(zero, g) for g in spec.generators]
    for i in range(2 * n):
        gens.append((tuple(int(j == i) for j in range(2 * n)), e))
    gens = [(y, _finv(y, ell)) for y in gens]

    class_of = {}
    meets_h2 = []
    for g in spec.elements:
        for h in M.vectors(2 * n, ell):
            x = (tuple(h), g)
            if x in class_of:
                continue
            cid = len(meets_h2)
            class_of[x] = cid
            hit = not any(x[0][:n])
            queue = deque([x])
            while queue:
                z = queue.popleft()
                for y, yi in gens:
                    w = _fmul(_fmul(y, z, ell), yi, ell)
                    if w not in class_of:
                        class_of[w] = cid
                        hit = hit or not any(w[0][:n])
                        queue.append(w)
            meets_h2.append(hit)
    return class_of, meets_h2


def _rows_conjugacy(spec: MatrixGroupSpec) -> List[Lemma4Row]:
    n, ell = spec.n, spec.modulus
    class_of, meets_h2 = _conjugacy_classes(spec)
    zero = M.zero_vec(n)
    rows = []
    for s in spec.elements:
        witness = None
        for h1 in M.vectors(n, ell):
            h1 = tuple(h1)
            if not meets_h2[class_of[(h1 + zero, s)]]:
                witness = h1
                break
        rows.append(Lemma4Row(s, witness is None, M.has_eigenvalue_one(s, ell), witness))
    return rows


def linear_hypothesis(s: Mat, ell: int) -> tuple[bool, Optional[Vec]]:
    """Does H1 lie in (s - 1)(H1 + H2) + H2?  Returns (verdict, failing basis vector of H1)."""
    n = len(s)
    d = M.sub(s, M.identity(n), ell)
    span = []
    # columns of (s - 1) acting diagonally on H1 + H2
    for j in range(n):
        col = tuple(d[i][j] for i in range(n))
        span.append(col + M.zero_vec(n))
        span.append(M.zero_vec(n) + col)
    for j in range(n):
        span.append(M.zero_vec(n) + tuple(int(i == j) for i in range(n)))
    base = M.rank(span, ell)
    for j in range(n):
        e = tuple(int(i == j) for i in range(n)) + M.zero_vec(n)
        if M.rank(span + [e], ell) > base:
            return False, e[:n]
    return True, None


def _rows_linear(spec: MatrixGroupSpec) -> List[Lemma4Row]:
    rows = []
    for s in spec.elements:
        hyp, w = linear_hypothesis(s, spec.modulus)
        rows.append(Lemma4Row(s, hyp, M.has_eigenvalue_one(s, spec.modulus), w))
    return rows


def lemma4_rows(spec: MatrixGroupSpec, mode: str = "conjugacy") -> List[Lemma4Row]:
    """hyp(sigma) and eig1(sigma) for every sigma in G, in element order."""
    if mode == "conjugacy":
        return _rows_conjugacy(spec)
    if mode == "linear":
        return _rows_linear(spec)
    raise ValueError(f"unknown mode {mode!r}")


def lemma4_verify(spec: MatrixGroupSpec, mode: str = "conjugacy") -> List[Mat]:
    """Every sigma satisfying the conjugacy hypothesis yet having eigenvalue 1 (expected: none)."""
    return [r.sigma for r in lemma4_rows(spec, mode) if r.hyp and r.eig1]


def converse_stats(rows: List[Lemma4Row]) -> dict:
    """Counts of the four (hyp, eig1) combinations; reported, never asserted."""
    out = {"hyp_eig1": 0, "hyp_noeig1": 0, "nohyp_eig1": 0, "nohyp_noeig1": 0}
    for r in rows:
        key = ("hyp" if r.hyp else "nohyp") + ("_eig1" if r.eig1 else "_noeig1")
        out[key] += 1
    return out
