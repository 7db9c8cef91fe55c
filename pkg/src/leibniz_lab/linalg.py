"""Exact linear algebra over a :class:`~leibniz_lab.fields.Field`.

Vectors are tuples of raw field values.  Matrices act on column vectors, so
column ``j`` of a matrix is the image of the ``j``-th basis vector.
Subspaces are kept in canonical form: reduced row echelon basis with zero rows
dropped, which makes subspace equality plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import Field, FieldError

Vector = tuple


class DimensionError(ValueError):
    """Shape mismatch between vectors, matrices or subspaces."""


def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vec_add(field: Field, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> Vector:
    return tuple(field.mul(c, a) for a in v)


def vec_is_zero(field: Field, v: Sequence) -> bool:
    return all(field.is_zero(a) for a in v)


def lin_comb(field: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if field.is_zero(c):
            continue
        for k, a in enumerate(v):
            if not field.is_zero(a):
                out[k] = field.add(out[k], field.mul(c, a))
    return tuple(out)


def rref(field: Field, rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)}, expected {ncols}")
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        pr = next((i for i in range(top, len(m)) if not field.is_zero(m[i][c])), None)
        if pr is None:
            continue
        m[top], m[pr] = m[pr], m[top]
        inv = field.inv(m[top][c])
        m[top] = [field.mul(inv, a) for a in m[top]]
        prow = m[top]
        for i in range(len(m)):
            if i != top and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], prow)]
        pivots.append(c)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def kernel(field: Field, rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(field, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for r, pc in zip(red, pivots):
            v[pc] = field.neg(r[free])
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix over one field."""

    field: Field
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        ents = tuple(tuple(r) for r in self.entries)
        if ents and any(len(r) != len(ents[0]) for r in ents):
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence]) -> "Matrix":
        return cls(field, tuple(tuple(field.coerce(a) for a in r) for r in rows))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls(field, tuple(() for _ in range(nrows or 0)))
        return cls(field, tuple(zip(*cols)))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, tuple((field.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, tuple(unit_vector(field, n, i) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.entries)) if self.entries else ())

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        f = self.field
        out = []
        for r in self.entries:
            s = f.zero
            for a, b in zip(r, v):
                if not f.is_zero(a) and not f.is_zero(b):
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldError("mixed fields in matrix product")
        if self.cols != other.rows:
            raise DimensionError("incompatible shapes")
        cols = [self.apply(c) for c in other.columns()]
        if not cols:
            return Matrix.zeros(self.field, self.rows, 0)
        return Matrix.from_columns(self.field, cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, tuple(vec_add(self.field, a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, tuple(vec_sub(self.field, a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, tuple(vec_scale(self.field, c, r) for r in self.entries))

    def power(self, k: int) -> "Matrix":
        self._require_square()
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(vec_is_zero(self.field, r) for r in self.entries)

    def rank(self) -> int:
        return len(rref(self.field, self.entries, self.cols)[0])

    def determinant(self):
        """Determinant by Gaussian elimination (used as an independent check)."""
        self._require_square()
        f = self.field
        m = [list(r) for r in self.entries]
        n = len(m)
        det = f.one
        for c in range(n):
            pr = next((i for i in range(c, n) if not f.is_zero(m[i][c])), None)
            if pr is None:
                return f.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = f.neg(det)
            det = f.mul(det, m[c][c])
            inv = f.inv(m[c][c])
            for i in range(c + 1, n):
                if not f.is_zero(m[i][c]):
                    factor = f.mul(m[i][c], inv)
                    m[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(m[i], m[c])]
        return det

    def _require_square(self):
        if not self.is_square:
            raise DimensionError(f"square matrix required, got {self.rows}x{self.cols}")

    def __str__(self):
        return "\n".join("[" + ", ".join(self.field.format(a) for a in r) + "]" for r in self.entries)


@dataclass(frozen=True)
class Subspace:
    """Subspace of field^ambient_dim in canonical RREF form."""

    field: Field
    ambient_dim: int
    basis: tuple  # RREF rows, zero rows removed
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(contains(other, b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "sum")

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_combine(self, other, "intersection")

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of v (assumed in the subspace) w.r.t. the RREF basis."""
        return tuple(v[p] for p in self.pivots)

    def complement_columns(self) -> list[int]:
        ps = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in ps]

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of v modulo the subspace."""
        f = self.field
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if not f.is_zero(c):
                out = [f.sub(a, f.mul(c, b)) for a, b in zip(out, row)]
        return tuple(out)

    def annihilator_rows(self) -> list[Vector]:
        """Rows y with y.s = 0 for all s here; v lies in the subspace iff all y.v vanish."""
        return kernel(self.field, self.basis, self.ambient_dim)

    def format_rows(self) -> list[list[str]]:
        return [[self.field.format(a) for a in r] for r in self.basis]

    def __str__(self):
        if not self.basis:
            return "0"
        return "span{" + ", ".join("(" + ", ".join(self.field.format(a) for a in r) + ")" for r in self.basis) + "}"


def span_rref(field: Field, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by the given coefficient rows."""
    rows = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionError(f"row of length {len(v)} in ambient dimension {ambient_dim}")
        rows.append([field.coerce(a) for a in v])
    red, pivots = rref(field, rows, ambient_dim)
    return Subspace(field, ambient_dim, tuple(tuple(r) for r in red), tuple(pivots))


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(field, n, (), ())


def full_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, tuple(unit_vector(field, n, i) for i in range(n)), tuple(range(n)))


def _check_compatible(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {U.ambient_dim} vs {V.ambient_dim}")
    if U.field != V.field:
        raise FieldError(f"subspaces over different fields: {U.field} vs {V.field}")


def contains(U: Subspace, v: Sequence) -> bool:
    if len(v) != U.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {U.ambient_dim}")
    return vec_is_zero(U.field, U.reduce(v))


membership = contains


def subspace_combine(U: Subspace, V: Subspace, mode: str) -> Subspace:
    _check_compatible(U, V)
    f, n = U.field, U.ambient_dim
    if mode == "sum":
        return span_rref(f, U.basis + V.basis, n)
    if mode == "intersection":
        if U.is_zero or V.is_zero:
            return zero_subspace(f, n)
        # sum_i a_i u_i = sum_j b_j v_j  <=>  (a, b) in ker [U^T | -V^T]
        cols = list(U.basis) + [vec_scale(f, f.neg(f.one), v) for v in V.basis]
        system = [tuple(c[k] for c in cols) for k in range(n)]
        sols = kernel(f, system, len(cols))
        return span_rref(f, (lin_comb(f, s[:U.dim], U.basis, n) for s in sols), n)
    raise ValueError(f"unknown mode {mode!r}")


def image(T: Matrix) -> Subspace:
    return span_rref(T.field, T.columns(), T.rows)


def null_space(T: Matrix) -> Subspace:
    return span_rref(T.field, kernel(T.field, T.entries, T.cols), T.cols)


def is_invariant(T: Matrix, W: Subspace) -> bool:
    return all(contains(W, T.apply(w)) for w in W.basis)


def restrict(T: Matrix, W: Subspace) -> Matrix:
    """Matrix of T restricted to an invariant subspace, in W's RREF basis."""
    if not is_invariant(T, W):
        raise ValueError("subspace is not invariant under the operator")
    cols = [W.coordinates(T.apply(w)) for w in W.basis]
    if not cols:
        return Matrix(T.field, ())
    return Matrix.from_columns(T.field, cols)


def char_poly_coeffs(T: Matrix) -> list:
    """Coefficients (constant term first) of det(tI - T), via Berkowitz.

    Division free, so it behaves identically over every field.
    """
    T._require_square()
    f = T.field
    n = T.rows
    A = T.entries
    # vector of coefficients, highest degree first
    poly = [f.one]
    for r in range(n):
        # leading principal (r+1)x(r+1) block: [[M, C], [R, a]] with M = A[:r][:r]
        a = A[r][r]
        R = [A[r][j] for j in range(r)]
        C = [A[i][r] for i in range(r)]
        # Toeplitz column: 1, -a, -R C, -R M C, -R M^2 C, ...
        col = [f.one, f.neg(a)]
        v = C
        for _ in range(r):
            s = f.zero
            for x, y in zip(R, v):
                s = f.add(s, f.mul(x, y))
            col.append(f.neg(s))
            v = [sum_row(f, A[i][:r], v) for i in range(r)]
        # poly_new = Toeplitz(col) * poly, length r+2
        new = []
        for i in range(r + 2):
            s = f.zero
            for j in range(len(poly)):
                if 0 <= i - j < len(col):
                    s = f.add(s, f.mul(col[i - j], poly[j]))
            new.append(s)
        poly = new
    return list(reversed(poly))


def sum_row(f: Field, row: Sequence, v: Sequence):
    s = f.zero
    for x, y in zip(row, v):
        if not f.is_zero(x) and not f.is_zero(y):
            s = f.add(s, f.mul(x, y))
    return s


def is_nilpotent_operator(T: Matrix) -> bool:
    T._require_square()
    return T.power(T.rows).is_zero()


def fitting_split(T: Matrix) -> tuple[Subspace, Subspace]:
    """(null component, one component) = (ker T^n, im T^n)."""
    T._require_square()
    P = T.power(T.rows)
    return null_space(P), image(P)


@dataclass(frozen=True)
class KrylovBasis:
    basis: tuple          # seed, T seed, ..., T^k seed
    coeffs: tuple         # c_0..c_k with T^{k+1} seed = sum c_i T^i seed

    @property
    def k(self) -> int:
        return len(self.basis) - 1


def companion_basis(T: Matrix, seed: Sequence, require_cyclic: bool = False) -> KrylovBasis:
    """Maximal independent Krylov prefix of ``seed`` under T, plus the relation closing it.

    With ``require_cyclic`` the prefix has to span the whole space, otherwise
    ``ValueError`` is raised.
    """
    T._require_square()
    f = T.field
    n = T.rows
    seed = tuple(f.coerce(a) for a in seed)
    if len(seed) != n:
        raise DimensionError(f"seed of length {len(seed)} for {n}x{n} operator")
    if vec_is_zero(f, seed):
        raise ValueError("zero seed")
    basis = [seed]
    while True:
        nxt = T.apply(basis[-1])
        # solve nxt = sum c_i basis_i
        system = [tuple(b[r] for b in basis) + (nxt[r],) for r in range(n)]
        red, piv = rref(f, system, len(basis) + 1)
        if len(basis) in piv:
            basis.append(nxt)
            continue
        coeffs = [f.zero] * len(basis)
        for row, pc in zip(red, piv):
            coeffs[pc] = row[-1]
        break
    if require_cyclic and len(basis) != n:
        raise ValueError(f"seed generates a {len(basis)}-dimensional Krylov space, not {n}")
    return KrylovBasis(tuple(basis), tuple(coeffs))


def quotient_operator(T: Matrix, W: Subspace) -> tuple[Matrix, list[int]]:
    """Operator induced by T on field^n / W, in the non-pivot coordinates of W."""
    if not is_invariant(T, W):
        raise ValueError("subspace is not invariant under the operator")
    f = T.field
    cols_idx = W.complement_columns()
    n = T.rows
    cols = []
    for c in cols_idx:
        img = W.reduce(T.apply(unit_vector(f, n, c)))
        cols.append(tuple(img[j] for j in cols_idx))
    if not cols:
        return Matrix(f, ()), cols_idx
    return Matrix.from_columns(f, cols), cols_idx
