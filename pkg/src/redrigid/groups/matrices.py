"""Square matrices and vectors over Z/m as nested tuples, plus finite matrix groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Sequence, Tuple

from ..primes import factorize, is_prime

Mat = Tuple[Tuple[int, ...], ...]
Vec = Tuple[int, ...]


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def scalar(n: int, c: int, m: int) -> Mat:
    return tuple(tuple(c % m if i == j else 0 for j in range(n)) for i in range(n))


def mat(rows: Sequence[Sequence[int]], m: int) -> Mat:
    return tuple(tuple(x % m for x in row) for row in rows)


def mul(A: Mat, B: Mat, m: int) -> Mat:
    cols = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % m for col in cols) for row in A)


def apply(A: Mat, v: Vec, m: int) -> Vec:
    return tuple(sum(a * x for a, x in zip(row, v)) % m for row in A)


def apply_block(A: Mat, v: Vec, m: int) -> Vec:
    """A acting diagonally on a vector in (Z/m)^n + (Z/m)^n."""
    n = len(A)
    return apply(A, v[:n], m) + apply(A, v[n:], m)


def sub(A: Mat, B: Mat, m: int) -> Mat:
    return tuple(tuple((a - b) % m for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def vadd(u: Vec, v: Vec, m: int) -> Vec:
    return tuple((a + b) % m for a, b in zip(u, v))


def vneg(u: Vec, m: int) -> Vec:
    return tuple(-a % m for a in u)


def zero_vec(n: int) -> Vec:
    return (0,) * n


def vectors(n: int, m: int):
    """All of (Z/m)^n in lexicographic order."""
    return product(range(m), repeat=n)


def _row_reduce(rows: list[list[int]], p: int) -> tuple[list[list[int]], int, int]:
    """Gaussian elimination mod prime p; returns (echelon rows, rank, det sign-product)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    det = 1
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][c] % p), None)
        if pivot is None:
            det = 0
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            det = -det
        inv = pow(rows[rank][c], -1, p)
        det = det * rows[rank][c] % p
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][c] % p:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rows, rank, det % p


def det(A: Mat, p: int) -> int:
    return _row_reduce([list(r) for r in A], p)[2] if len(A) else 1


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return _row_reduce([list(r) for r in rows], p)[1]


def inverse(A: Mat, p: int) -> Mat:
    n = len(A)
    aug = [list(A[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, r, _ = _row_reduce(aug, p)
    if any(red[i][i] != 1 for i in range(n)) or r < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def has_eigenvalue_one(A: Mat, p: int) -> bool:
    return det(sub(A, identity(len(A)), p), p) == 0


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def all_gl(n: int, p: int) -> list[Mat]:
    """Every invertible n x n matrix over F_p, lexicographic."""
    out = []
    for entries in product(range(p), repeat=n * n):
        A = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
        if det(A, p):
            out.append(A)
    return out


def closure(gens: Sequence[Mat], n: int, m: int) -> list[Mat]:
    """Breadth-first closure of the generators under right multiplication."""
    e = identity(n)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s, m)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


@dataclass(frozen=True)
class MatrixGroupSpec:
    """A finite subgroup of GL(n, F_p), materialised as the closure of its generators."""

    modulus: int
    n: int
    generators: Tuple[Mat, ...]
    elements: Tuple[Mat, ...] = ()
    index: Dict[Mat, int] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def generated(cls, modulus: int, gens: Sequence[Sequence[Sequence[int]]]) -> "MatrixGroupSpec":
        if not is_prime(modulus):
            raise ValueError("modulus must be prime")
        gens = tuple(mat(g, modulus) for g in gens)
        if not gens:
            raise ValueError("need at least one generator (use the identity for the trivial group)")
        n = len(gens[0])
        for g in gens:
            if len(g) != n or any(len(r) != n for r in g) or det(g, modulus) == 0:
                raise ValueError(f"{g} is not an invertible {n}x{n} matrix")
        elements = tuple(closure(gens, n, modulus))
        spec = cls(modulus, n, gens, elements, {g: i for i, g in enumerate(elements)})
        if gl_order(n, modulus) % len(elements):
            raise AssertionError("group order does not divide |GL|")
        return spec

    @classmethod
    def gl(cls, n: int, p: int) -> "MatrixGroupSpec":
        return cls.generated(p, gl_generators(n, p))

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, A: Mat, B: Mat) -> Mat:
        return mul(A, B, self.modulus)

    def is_closed(self) -> bool:
        e = identity(self.n)
        if e not in self.index:
            return False
        return all(
            mul(a, b, self.modulus) in self.index for a in self.elements for b in self.elements
        ) and all(inverse(a, self.modulus) in self.index for a in self.elements)

    def centre(self) -> list[Mat]:
        return [z for z in self.elements if all(mul(z, g, self.modulus) == mul(g, z, self.modulus) for g in self.generators)]


def gl_generators(n: int, p: int) -> list[Mat]:
    """Generators of GL(n, F_p): a primitive-root diagonal matrix, elementary transvections
    and the long cycle permutation."""
    root = next(g for g in range(1, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1)))
    gens = []
    d = [list(r) for r in identity(n)]
    d[0][0] = root
    gens.append(mat(d, p))
    if n > 1:
        t = [list(r) for r in identity(n)]
        t[0][1] = 1
        gens.append(mat(t, p))
        cyc = [[int(j == (i + 1) % n) for j in range(n)] for i in range(n)]
        gens.append(mat(cyc, p))
    return gens

