"""Left Leibniz algebras given by structure constants.

Convention: ``a(bc) = (ab)c + b(ac)``, products not listed in the table are
zero, and powers are left-normed (``v^{k+1} = [v, v^k]``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .fields import Field, FieldError
from .linalg import (DimensionError, Matrix, Subspace, Vector, contains, full_space,
                     kernel, lin_comb, span_rref, unit_vector, vec_add, vec_is_zero,
                     vec_scale, vec_sub, zero_subspace)


class LeibnizIdentityError(ValueError):
    """The table violates the Leibniz identity; carries a witness triple."""

    def __init__(self, witness: tuple[int, int, int], message: str = ""):
        self.witness = witness
        super().__init__(message or f"Leibniz identity fails on basis triple {witness}")


class NotClosedError(ValueError):
    """A subspace expected to be a subalgebra or ideal is not one."""


@dataclass(frozen=True, eq=False)
class LeibnizAlgebra:
    field: Field
    dim: int
    table: Mapping  # (i, j) -> row of length dim; missing entries are zero
    labels: tuple = ()
    metadata: Mapping = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("algebra dimension must be positive")
        labels = tuple(self.labels) or tuple(f"e{i}" for i in range(self.dim))
        if len(labels) != self.dim:
            raise DimensionError(f"{len(labels)} labels for dimension {self.dim}")
        object.__setattr__(self, "labels", labels)
        clean = {}
        for (i, j), row in self.table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise IndexError(f"product index ({i}, {j}) out of range for dimension {self.dim}")
            if len(row) != self.dim:
                raise DimensionError(f"product row for ({i}, {j}) has length {len(row)}")
            r = tuple(self.field.coerce(a) for a in row)
            if not vec_is_zero(self.field, r):
                clean[(i, j)] = r
        object.__setattr__(self, "table", clean)

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and self.table == other.table and self.labels == other.labels)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(sorted(self.table.items())), self.labels))

    # -- elements -------------------------------------------------------------

    def element(self, coords: Sequence) -> "Element":
        return Element(self, tuple(self.field.coerce(a) for a in coords))

    def basis_element(self, i: int) -> "Element":
        return Element(self, unit_vector(self.field, self.dim, i))

    def __getitem__(self, label: str) -> "Element":
        return self.basis_element(self.labels.index(label))

    @property
    def zero(self) -> "Element":
        return Element(self, (self.field.zero,) * self.dim)

    def product(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), (self.field.zero,) * self.dim)

    def bracket_vec(self, u: Sequence, v: Sequence) -> Vector:
        f = self.field
        out = [f.zero] * self.dim
        for (i, j), row in self.table.items():
            a, b = u[i], v[j]
            if f.is_zero(a) or f.is_zero(b):
                continue
            c = f.mul(a, b)
            for k, r in enumerate(row):
                if not f.is_zero(r):
                    out[k] = f.add(out[k], f.mul(c, r))
        return tuple(out)

    def full(self) -> Subspace:
        return full_space(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return zero_subspace(self.field, self.dim)

    def span(self, vectors: Iterable) -> Subspace:
        return span_rref(self.field, (_coords(self, v) for v in vectors), self.dim)

    def format_vector(self, v: Sequence) -> str:
        f = self.field
        terms = []
        for c, lab in zip(v, self.labels):
            if f.is_zero(c):
                continue
            s = f.format(c)
            if s == "1":
                terms.append(lab)
            elif s == "-1":
                terms.append("-" + lab)
            elif any(ch in s[1:] for ch in "+-"):
                terms.append(f"({s}){lab}")
            else:
                terms.append(f"{s}{lab}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def format_subspace(self, S: Subspace) -> str:
        if S.is_zero:
            return "0"
        return "span{" + ", ".join(self.format_vector(b) for b in S.basis) + "}"


@dataclass(frozen=True)
class Element:
    algebra: LeibnizAlgebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise DimensionError(f"element with {len(self.coords)} coordinates in dimension {self.algebra.dim}")

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, vec_add(self.algebra.field, self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, vec_sub(self.algebra.field, self.coords, other.coords))

    def __neg__(self) -> "Element":
        f = self.algebra.field
        return Element(self.algebra, vec_scale(f, f.neg(f.one), self.coords))

    def __rmul__(self, c) -> "Element":
        f = self.algebra.field
        return Element(self.algebra, vec_scale(f, f.coerce(c), self.coords))

    def __mul__(self, other):
        """``u * v`` is the bracket [u, v]; ``u * c`` scales by a field element."""
        if isinstance(other, Element):
            return bracket(self.algebra, self, other)
        return self.__rmul__(other)

    def __pow__(self, k: int) -> "Element":
        """Left-normed power: v^1 = v, v^{k+1} = [v, v^k]."""
        if k < 1:
            raise ValueError("powers start at 1")
        r = self
        for _ in range(k - 1):
            r = self * r
        return r

    @property
    def is_zero(self) -> bool:
        return vec_is_zero(self.algebra.field, self.coords)

    def __str__(self):
        return self.algebra.format_vector(self.coords)


def _coords(A: LeibnizAlgebra, v) -> Vector:
    if isinstance(v, Element):
        if v.algebra is not A and v.algebra != A:
            raise ValueError("element belongs to a different algebra")
        return v.coords
    v = tuple(A.field.coerce(a) for a in v)
    if len(v) != A.dim:
        raise DimensionError(f"vector of length {len(v)} in dimension {A.dim}")
    return v


def _check_space(A: LeibnizAlgebra, S: Subspace):
    if S.ambient_dim != A.dim:
        raise DimensionError(f"subspace of ambient dimension {S.ambient_dim} in algebra of dimension {A.dim}")
    if S.field != A.field:
        raise FieldError(f"subspace over {S.field} in algebra over {A.field}")


# -- basic operations ------------------------------------------------------------

def bracket(A: LeibnizAlgebra, u, v) -> Element:
    return Element(A, A.bracket_vec(_coords(A, u), _coords(A, v)))


@dataclass(frozen=True)
class LeibnizCheck:
    ok: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.ok


def validate_leibniz(A: LeibnizAlgebra) -> LeibnizCheck:
    """Check a(bc) = (ab)c + b(ac) on all basis triples."""
    f, n = A.field, A.dim
    for i in range(n):
        ei = unit_vector(f, n, i)
        for j in range(n):
            ej = unit_vector(f, n, j)
            eij = A.product(i, j)
            for k in range(n):
                ek = unit_vector(f, n, k)
                lhs = A.bracket_vec(ei, A.product(j, k))
                rhs = vec_add(f, A.bracket_vec(eij, ek), A.bracket_vec(ej, A.product(i, k)))
                if lhs != rhs:
                    return LeibnizCheck(False, (i, j, k))
    return LeibnizCheck(True)


def require_leibniz(A: LeibnizAlgebra) -> LeibnizAlgebra:
    check = validate_leibniz(A)
    if not check.ok:
        raise LeibnizIdentityError(check.witness)
    return A


def is_lie(A: LeibnizAlgebra) -> bool:
    f = A.field
    for i in range(A.dim):
        if not vec_is_zero(f, A.product(i, i)):
            return False
        for j in range(i + 1, A.dim):
            if not vec_is_zero(f, vec_add(f, A.product(i, j), A.product(j, i))):
                return False
    return True


def left_mult_matrix(A: LeibnizAlgebra, u) -> Matrix:
    u = _coords(A, u)
    cols = [A.bracket_vec(u, unit_vector(A.field, A.dim, j)) for j in range(A.dim)]
    return Matrix.from_columns(A.field, cols)


def right_mult_matrix(A: LeibnizAlgebra, u) -> Matrix:
    u = _coords(A, u)
    cols = [A.bracket_vec(unit_vector(A.field, A.dim, j), u) for j in range(A.dim)]
    return Matrix.from_columns(A.field, cols)


def product_space(A: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v]} over basis vectors u of U and v of V."""
    _check_space(A, U)
    _check_space(A, V)
    return span_rref(A.field, (A.bracket_vec(u, v) for u in U.basis for v in V.basis), A.dim)


def is_subalgebra(A: LeibnizAlgebra, S: Subspace) -> bool:
    _check_space(A, S)
    return all(contains(S, A.bracket_vec(u, v)) for u in S.basis for v in S.basis)


def is_ideal(A: LeibnizAlgebra, S: Subspace) -> bool:
    _check_space(A, S)
    f, n = A.field, A.dim
    for s in S.basis:
        for j in range(n):
            e = unit_vector(f, n, j)
            if not contains(S, A.bracket_vec(e, s)) or not contains(S, A.bracket_vec(s, e)):
                return False
    return True


def _closure(A: LeibnizAlgebra, start: Subspace, step) -> Subspace:
    S = start
    while True:
        new = span_rref(A.field, S.basis + tuple(step(S)), A.dim)
        if new == S:
            return S
        S = new


def subalgebra_closure(A: LeibnizAlgebra, gens: Iterable) -> Subspace:
    """Smallest subalgebra containing the generators."""
    start = A.span(gens)
    return _closure(A, start, lambda S: (A.bracket_vec(u, v) for u in S.basis for v in S.basis))


def ideal_closure(A: LeibnizAlgebra, gens: Iterable) -> Subspace:
    """Smallest two-sided ideal containing the generators."""
    start = A.span(gens)
    f, n = A.field, A.dim
    units = [unit_vector(f, n, j) for j in range(n)]

    def step(S):
        for s in S.basis:
            for e in units:
                yield A.bracket_vec(e, s)
                yield A.bracket_vec(s, e)

    return _closure(A, start, step)


# -- series ------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesReport:
    kind: str                 # "lower_central" | "derived"
    terms: tuple              # Subspaces, first term is the starting space
    stabilized_at: int        # index of the last term (the first repeat or zero)
    terminates_at_zero: bool

    @property
    def last(self) -> Subspace:
        return self.terms[-1]

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def series(A: LeibnizAlgebra, kind: str = "lower_central", within: Subspace | None = None) -> SeriesReport:
    """Lower central (S^{k+1} = [S, S^k]) or derived series of ``within`` (default A)."""
    S = A.full() if within is None else within
    _check_space(A, S)
    if within is not None and not is_subalgebra(A, S):
        raise NotClosedError("series requires a subalgebra")
    if kind not in ("lower_central", "derived"):
        raise ValueError(f"unknown series kind {kind!r}")
    terms = [S]
    while not terms[-1].is_zero:
        cur = terms[-1]
        nxt = product_space(A, S, cur) if kind == "lower_central" else product_space(A, cur, cur)
        if nxt == cur:
            break
        terms.append(nxt)
    return SeriesReport(kind, tuple(terms), len(terms) - 1, terms[-1].is_zero)


def is_nilpotent(A: LeibnizAlgebra, within: Subspace | None = None, method: str = "series") -> bool:
    """Nilpotency by the lower central series, or by normalizers of subalgebras.

    The normalizer method (nilpotent iff every proper subalgebra is properly
    contained in its normalizer) enumerates all subspaces and therefore needs a
    finite field.
    """
    if method == "series":
        return series(A, "lower_central", within).terminates_at_zero
    if method == "normalizer":
        from .oracle import is_nilpotent_by_normalizer
        B = A if within is None else restrict_algebra(A, within)
        return is_nilpotent_by_normalizer(B)
    raise ValueError(f"unknown method {method!r}")


def is_solvable(A: LeibnizAlgebra, within: Subspace | None = None) -> bool:
    return series(A, "derived", within).terminates_at_zero


def leibniz_kernel(A: LeibnizAlgebra) -> Subspace:
    """Span of all squares: [e_i, e_i] and [e_i, e_j] + [e_j, e_i]."""
    f = A.field
    vecs = []
    for i in range(A.dim):
        vecs.append(A.product(i, i))
        for j in range(i + 1, A.dim):
            vecs.append(vec_add(f, A.product(i, j), A.product(j, i)))
    return span_rref(f, vecs, A.dim)


def normalizer(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    """{v : [v, S] ⊆ S and [S, v] ⊆ S}."""
    _check_space(A, S)
    if not is_subalgebra(A, S):
        raise NotClosedError("normalizer requires a subalgebra")
    f, n = A.field, A.dim
    ann = S.annihilator_rows()
    if not ann:
        return A.full()
    rows = []
    for s in S.basis:
        R = right_mult_matrix(A, s)   # v -> [v, s]
        Lm = left_mult_matrix(A, s)   # v -> [s, v]
        for y in ann:
            for M in (R, Lm):
                rows.append(tuple(sum_col(f, y, M, c) for c in range(n)))
    return span_rref(f, kernel(f, rows, n), n)


def sum_col(f: Field, y: Sequence, M: Matrix, c: int):
    s = f.zero
    for a, row in zip(y, M.entries):
        if not f.is_zero(a) and not f.is_zero(row[c]):
            s = f.add(s, f.mul(a, row[c]))
    return s


# -- quotients and restrictions -------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    algebra: LeibnizAlgebra
    projection: Matrix      # (dim A/I) x (dim A)
    section: Matrix         # (dim A) x (dim A/I): coset representatives
    ideal: Subspace

    def project(self, v: Sequence) -> Vector:
        return self.projection.apply(v)

    def project_space(self, S: Subspace) -> Subspace:
        return span_rref(self.algebra.field, (self.project(b) for b in S.basis), self.algebra.dim)

    def lift(self, w: Sequence) -> Vector:
        return self.section.apply(w)

    def preimage(self, T: Subspace) -> Subspace:
        return span_rref(self.ideal.field, tuple(self.lift(b) for b in T.basis) + self.ideal.basis,
                         self.ideal.ambient_dim)


def quotient(A: LeibnizAlgebra, I: Subspace) -> Quotient:
    """A/I on the non-pivot coordinates of I's RREF basis.

    Raises :class:`NotClosedError` unless I is an ideal; a quotient by the
    whole algebra is rejected since algebras have positive dimension.
    """
    _check_space(A, I)
    if not is_ideal(A, I):
        raise NotClosedError("quotient requires an ideal")
    f, n = A.field, A.dim
    comp = I.complement_columns()
    m = len(comp)
    if m == 0:
        raise DimensionError("quotient by the whole algebra is the zero algebra")
    proj_cols = []
    for j in range(n):
        r = I.reduce(unit_vector(f, n, j))
        proj_cols.append(tuple(r[c] for c in comp))
    P = Matrix.from_columns(f, proj_cols)
    Sec = Matrix.from_columns(f, [unit_vector(f, n, c) for c in comp])
    table = {}
    for s, cs in enumerate(comp):
        for t, ct in enumerate(comp):
            row = P.apply(A.product(cs, ct))
            if not vec_is_zero(f, row):
                table[(s, t)] = row
    B = LeibnizAlgebra(f, m, table, tuple(A.labels[c] for c in comp))
    return Quotient(B, P, Sec, I)


def restrict_algebra(A: LeibnizAlgebra, S: Subspace) -> LeibnizAlgebra:
    """The subalgebra S as an algebra in its own RREF basis."""
    _check_space(A, S)
    if S.is_zero:
        raise DimensionError("zero subalgebra has no algebra structure of positive dimension")
    if not is_subalgebra(A, S):
        raise NotClosedError("restriction requires a subalgebra")
    table = {}
    for i, u in enumerate(S.basis):
        for j, v in enumerate(S.basis):
            table[(i, j)] = S.coordinates(A.bracket_vec(u, v))
    labels = tuple(A.format_vector(b) for b in S.basis)
    return LeibnizAlgebra(A.field, S.dim, table, labels)


def embed(S: Subspace, coords: Sequence) -> Vector:
    """Ambient vector of an element given in S's basis coordinates."""
    return lin_comb(S.field, coords, S.basis, S.ambient_dim)


def element_power(A: LeibnizAlgebra, v, k: int) -> Vector:
    v = _coords(A, v)
    r = v
    for _ in range(k - 1):
        r = A.bracket_vec(v, r)
    return r
