"""Integral lattices: exact Gram matrices, signatures, and standard blocks.

A lattice here is Z^n with an integral nondegenerate symmetric bilinear
form, represented by its Gram matrix.  All arithmetic is arbitrary
precision and exact; the signature comes from rational congruence
diagonalization, never from numerical eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import Degenerate, DimensionMismatch, InvalidParameter, NotSymmetric

IntVec = linalg.IntVec


@dataclass(frozen=True)
class GramLattice:
    """An integral nondegenerate symmetric bilinear form on Z^rank."""

    gram: linalg.IntMat
    rank: int

    def pair(self, u, v) -> int:
        u = coords_of(u)
        v = coords_of(v)
        if len(u) != self.rank or len(v) != self.rank:
            raise DimensionMismatch(f"vectors must have length {self.rank}")
        return linalg.pairing(self.gram, u, v)

    def norm(self, v) -> int:
        return self.pair(v, v)

    @property
    def determinant(self) -> int:
        return _determinant(self)

    @property
    def signature(self) -> tuple[int, int]:
        return signature(self)

    def __repr__(self):
        return f"GramLattice(rank={self.rank}, gram={[list(r) for r in self.gram]})"


@dataclass(frozen=True)
class LatticeVector:
    """An exact integer vector in an ambient lattice."""

    coords: IntVec

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def is_primitive(self) -> bool:
        return linalg.vec_content(self.coords) == 1

    def __repr__(self):
        return f"LatticeVector{self.coords}"


def coords_of(v) -> IntVec:
    """Accept LatticeVector or any int sequence; return a plain tuple."""
    if isinstance(v, LatticeVector):
        return v.coords
    return tuple(v)


def build_lattice(gram: Sequence[Sequence[int]]) -> GramLattice:
    """Validate and wrap a Gram matrix.

    Raises NotSymmetric for asymmetric input and Degenerate when the
    determinant vanishes.
    """
    try:
        mat = linalg.to_int_matrix(gram)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from None
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise NotSymmetric("gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j] != mat[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
    if linalg.bareiss_det(mat) == 0:
        raise Degenerate("gram matrix has determinant 0")
    return GramLattice(gram=mat, rank=n)


@lru_cache(maxsize=None)
def _determinant(lattice: GramLattice) -> int:
    return linalg.bareiss_det(lattice.gram)


@lru_cache(maxsize=None)
def signature(lattice: GramLattice) -> tuple[int, int]:
    """Inertia (p, q) of the form; p + q = rank by nondegeneracy."""
    p, q = linalg.signature_of_gram(lattice.gram)
    assert p + q == lattice.rank
    return p, q


def inner_product(lattice: GramLattice, u, v) -> int:
    return lattice.pair(u, v)


def direct_sum(l1: GramLattice, l2: GramLattice) -> GramLattice:
    """Orthogonal (block-diagonal) sum."""
    n1, n2 = l1.rank, l2.rank
    rows = []
    for i in range(n1):
        rows.append(tuple(l1.gram[i]) + (0,) * n2)
    for i in range(n2):
        rows.append((0,) * n1 + tuple(l2.gram[i]))
    return GramLattice(gram=tuple(rows), rank=n1 + n2)


# Cartan matrices of the simply laced root systems used by the criteria
# families; stored positive definite, negated on demand.
_CARTAN = {
    "A2": ((2, -1), (-1, 2)),
    "D4": ((2, -1, 0, 0),
           (-1, 2, -1, -1),
           (0, -1, 2, 0),
           (0, -1, 0, 2)),
    "E8": ((2, -1, 0, 0, 0, 0, 0, 0),
           (-1, 2, -1, 0, 0, 0, 0, 0),
           (0, -1, 2, -1, 0, 0, 0, -1),
           (0, 0, -1, 2, -1, 0, 0, 0),
           (0, 0, 0, -1, 2, -1, 0, 0),
           (0, 0, 0, 0, -1, 2, -1, 0),
           (0, 0, 0, 0, 0, -1, 2, 0),
           (0, 0, -1, 0, 0, 0, 0, 2)),
}


def standard_lattice(name: str, m: int | None = None, positive: bool = False) -> GramLattice:
    """Standard building blocks: U, A2, D4, E8 and rank-one <m>.

    Root lattices come out negative definite (root norm -2) because the
    hyperbolic lattices assembled from them have signature (1, n); pass
    positive=True to flip the sign convention.
    """
    key = name.upper()
    if key == "U":
        return build_lattice([[0, 1], [1, 0]])
    if key in _CARTAN:
        sign = 1 if positive else -1
        return build_lattice([[sign * x for x in row] for row in _CARTAN[key]])
    if key in ("RANK1", "<M>"):
        if m is None or m == 0:
            raise InvalidParameter("rank1 lattice needs a nonzero integer m")
        return build_lattice([[m]])
    raise InvalidParameter(f"unknown standard lattice {name!r}")


def rank1(m: int) -> GramLattice:
    return standard_lattice("rank1", m)


def vector(coords: Iterable[int]) -> LatticeVector:
    c = tuple(int(x) for x in coords)
    return LatticeVector(coords=c)


def is_primitive(v) -> bool:
    c = coords_of(v)
    return linalg.vec_content(c) == 1


def primitive_part(v) -> IntVec:
    c = coords_of(v)
    g = linalg.vec_content(c)
    if g == 0:
        raise InvalidParameter("zero vector")
    return tuple(x // g for x in c)


def gcd_of(v) -> int:
    g = 0
    for x in coords_of(v):
        g = gcd(g, abs(x))
    return g
