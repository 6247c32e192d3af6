"""Exact linear algebra over arbitrary-precision integers and rationals.

Matrices are tuples of tuples (rows); vectors are tuples.  Everything here
is pure and allocation-cheap at desk scale (rank <= ~10); no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]


def to_int_matrix(rows: Sequence[Sequence[int]]) -> IntMat:
    """Validate a rectangular matrix of Python ints (bools rejected)."""
    out = []
    width = None
    for row in rows:
        r = tuple(row)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"matrix entry {x!r} is not an exact integer")
        out.append(r)
    if not out or width == 0:
        raise ValueError("empty matrix")
    return tuple(out)


def identity_matrix(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(mat):
    return tuple(zip(*mat))


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(v):
    return tuple(-x for x in v)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def pairing(gram, u, v):
    """u^T * gram * v, exact."""
    return sum(u[i] * sum(gram[i][j] * v[j] for j in range(len(v))) for i in range(len(u)))


def matrix_power(m, k: int):
    n = len(m)
    out = identity_matrix(n)
    base = m
    e = k
    while e > 0:
        if e & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        e >>= 1
    return out


def bareiss_det(mat) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def vec_content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive_vector(v) -> IntVec:
    """Clear denominators of a rational vector and divide out the gcd.

    The sign is kept as given; callers normalize orientation themselves.
    """
    fracs = [Fraction(x) for x in v]
    if all(f == 0 for f in fracs):
        raise ValueError("zero vector has no primitive representative")
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = vec_content(ints)
    return tuple(x // g for x in ints)


# -- rational Gaussian elimination -------------------------------------------

def _frac_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    a = _frac_rows(rows)
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(row_echelon(rows)[0])


def kernel_basis(rows) -> list[IntVec]:
    """Primitive integer basis of {x : rows * x = 0}, deterministic order."""
    if not rows:
        raise ValueError("kernel of empty row list is ambient; handle at caller")
    ncols = len(rows[0])
    rref, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rref[i][fc]
        basis.append(primitive_vector(vec))
    return basis


def solve_linear(rows, rhs):
    """One exact solution of rows * x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    rref, pivots = row_echelon(aug)
    for row in rref:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rref[i][-1]
    return x


def int_matrix_inverse(mat):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(mat)
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(mat)]
    rref, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = tuple(tuple(int(x) if x.denominator == 1 else x for x in row[n:]) for row in rref)
    for row in inv:
        for x in row:
            if isinstance(x, Fraction):
                raise ValueError("inverse is not integral (determinant not a unit)")
    return inv


# -- symmetric forms ----------------------------------------------------------

def congruence_diagonal(gram) -> list[Fraction]:
    """Diagonal of a rational congruence diagonalization T^t G T.

    Symmetric pivoting; a zero pivot with a nonzero off-diagonal partner is
    repaired by the symmetric completion step v_i <- v_i + v_j, which makes
    the pivot 2*G[i][j] != 0.  Deterministic.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                # symmetric swap of basis vectors k and j
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                for col in range(n):
                    a[k][col] += a[j][col]
                for row in a:
                    row[k] += row[j]
        pivot = a[k][k]
        diag.append(pivot)
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / pivot
                for col in range(n):
                    a[i][col] -= f * a[k][col]
                for row in range(n):
                    a[row][i] -= f * a[row][k]
    return diag


def signature_of_gram(gram) -> tuple[int, int]:
    """(positive, negative) inertia counts of a nondegenerate symmetric matrix."""
    diag = congruence_diagonal(gram)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg


def gram_schmidt_frame(gram, v0) -> list[tuple[Fraction, ...]]:
    """Rational orthogonal frame starting from v0, extended by basis vectors.

    Returns n linearly independent pairwise gram-orthogonal vectors with
    frame[0] = v0.  No normalization (norms stay rational).
    """
    n = len(gram)
    frame: list[tuple[Fraction, ...]] = [tuple(Fraction(x) for x in v0)]
    norms = [frac_pairing(gram, frame[0], frame[0])]
    if norms[0] == 0:
        raise ValueError("frame seed must be anisotropic")
    for i in range(n):
        e = [Fraction(1 if j == i else 0) for j in range(n)]
        v = list(e)
        for f, nf in zip(frame, norms):
            c = frac_pairing(gram, e, f) / nf
            v = [x - c * y for x, y in zip(v, f)]
        if any(x != 0 for x in v):
            nv = frac_pairing(gram, v, v)
            if nv == 0:
                raise ValueError("gram-schmidt hit an isotropic vector (degenerate input?)")
            frame.append(tuple(v))
            norms.append(nv)
        if len(frame) == n:
            break
    if len(frame) != n:
        raise ValueError("could not complete frame (degenerate form?)")
    return frame


def frac_pairing(gram, u, v) -> Fraction:
    return sum(Fraction(u[i]) * sum(Fraction(gram[i][j]) * Fraction(v[j])
               for j in range(len(v))) for i in range(len(u)))
