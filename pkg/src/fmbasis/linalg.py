"""Exact linear algebra over the coefficient fields.

Subspaces are stored in reduced row echelon form, so equal subspaces have
identical tuples and hash equal.  Prime-field elimination runs through
small numpy integer kernels; F_p(t) falls back to generic field loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class Subspace:
    field: object
    ambient_dim: int
    rows: tuple  # RREF rows, pivot columns strictly increasing

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def contains(self, vec) -> bool:
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(vec)} in ambient dimension {self.ambient_dim}"
            )
        return not any(c != self.field.zero for c in _reduce_vector(self.field, self.rows, vec))

    def __le__(self, other) -> bool:
        return all(other.contains(r) for r in self.rows)


def _reduce_vector(F, rows, vec):
    v = list(vec)
    for row in rows:
        piv = next(i for i, c in enumerate(row) if c != F.zero)
        c = v[piv]
        if c != F.zero:
            for i in range(piv, len(v)):
                if row[i] != F.zero:
                    v[i] = F.sub(v[i], F.mul(c, row[i]))
    return v


def _rref_generic(F, rows):
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    out = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col] != F.zero:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][col])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != F.zero:
                c = mat[i][col]
                mat[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    for row in mat[:r]:
        out.append(tuple(row))
    return out


def _rref_prime_np(p, array):
    A = np.asarray(array, dtype=np.int64) % p
    nrows, ncols = A.shape
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv[int(A[r, col])]) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, col], A[r])) % p
        r += 1
    return A[:r]


def rref(F, rows, ambient_dim=None):
    """Reduced row echelon form; returns (Subspace, rank)."""
    rows = [tuple(r) for r in rows]
    if ambient_dim is None:
        if not rows:
            raise DimensionMismatch("ambient dimension required for an empty row set")
        ambient_dim = len(rows[0])
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionMismatch("ragged rows")
    if not rows:
        return Subspace(F, ambient_dim, ()), 0
    if F.is_prime_field:
        red = _rref_prime_np(F.p, rows)
        echelon = tuple(tuple(int(x) for x in row) for row in red)
    else:
        echelon = tuple(_rref_generic(F, rows))
    return Subspace(F, ambient_dim, echelon), len(echelon)


def zero_subspace(F, ambient_dim) -> Subspace:
    return Subspace(F, ambient_dim, ())


def full_subspace(F, ambient_dim) -> Subspace:
    rows = tuple(unit_vector(F, ambient_dim, i) for i in range(ambient_dim))
    return Subspace(F, ambient_dim, rows)


def unit_vector(F, n, i):
    return tuple(F.one if j == i else F.zero for j in range(n))


def span(F, vectors, ambient_dim=None) -> Subspace:
    return rref(F, vectors, ambient_dim)[0]


def _check_compatible(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim or U.field != V.field:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    return span(U.field, list(U.rows) + list(V.rows), U.ambient_dim)


def kernel(F, rows, width) -> Subspace:
    """Kernel of the linear map x -> x . rows^T, i.e. null space of the
    matrix whose columns are `rows` entries; `rows` has `width` columns."""
    nrows = len(rows)
    if nrows == 0:
        return full_subspace(F, 0)
    # RREF of the matrix, tracking pivot columns of the transpose system
    mat = [list(r) for r in rows]
    # Work on the transpose: solutions c with sum c_i rows[i] = 0
    # Stack rows as columns of M (width x nrows), kernel of M.
    M = [[mat[j][i] for j in range(nrows)] for i in range(width)]
    sub, _ = rref(F, M, nrows) if M else (zero_subspace(F, nrows), 0)
    red = [list(r) for r in sub.rows]
    pivots = []
    for row in red:
        pivots.append(next(i for i, c in enumerate(row) if c != F.zero))
    free = [j for j in range(nrows) if j not in pivots]
    basis = []
    for j in free:
        v = [F.zero] * nrows
        v[j] = F.one
        for row, piv in zip(red, pivots):
            # piv entry satisfies row . v = 0
            v[piv] = F.neg(row[j])
        basis.append(tuple(v))
    return span(F, basis, nrows) if basis else zero_subspace(F, nrows)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    _check_compatible(U, V)
    F = U.field
    if U.is_zero() or V.is_zero():
        return zero_subspace(F, U.ambient_dim)
    stacked = list(U.rows) + list(V.rows)
    ker = kernel(F, stacked, U.ambient_dim)
    vectors = []
    for coeffs in ker.rows:
        v = [F.zero] * U.ambient_dim
        for c, row in zip(coeffs[: U.dim], U.rows):
            if c != F.zero:
                for i, x in enumerate(row):
                    if x != F.zero:
                        v[i] = F.add(v[i], F.mul(c, x))
        vectors.append(tuple(v))
    return span(F, vectors, U.ambient_dim) if vectors else zero_subspace(F, U.ambient_dim)


def contains(U: Subspace, vec) -> bool:
    return U.contains(tuple(vec))


def solve(F, rows, b):
    """One solution x of x . rows = b (row-vector convention), or None."""
    if not rows:
        return None if any(c != F.zero for c in b) else ()
    n = len(rows)
    width = len(rows[0])
    if len(b) != width:
        raise DimensionMismatch("right-hand side length mismatch")
    # Augment the transpose system: columns are the rows, target b.
    M = [[rows[j][i] for j in range(n)] + [b[i]] for i in range(width)]
    sub, _ = rref(F, M, n + 1)
    x = [F.zero] * n
    for row in sub.rows:
        piv = next(i for i, c in enumerate(row) if c != F.zero)
        if piv == n:
            return None
        x[piv] = row[n]
    # verify (guards inconsistent systems whose pivot pattern hid a clash)
    acc = [F.zero] * width
    for xi, r in zip(x, rows):
        if xi != F.zero:
            for i, c in enumerate(r):
                if c != F.zero:
                    acc[i] = F.add(acc[i], F.mul(xi, c))
    if any(a != bb for a, bb in zip(acc, b)):
        return None
    return tuple(x)


def complete_basis(U: Subspace, W: Subspace):
    """Rows of W extending a basis of U to one of W, in W's echelon order."""
    _check_compatible(U, W)
    F = U.field
    acc = list(U.rows)
    added = []
    current = span(F, acc, U.ambient_dim) if acc else zero_subspace(F, U.ambient_dim)
    for row in W.rows:
        if not current.contains(row):
            added.append(row)
            current = span(F, list(current.rows) + [row], U.ambient_dim)
    return added
