"""Structure theory on top of the bracket engine: cores, Fitting components,
Cartan search, codimension-one nilradicals, cyclicity and irreducible actions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .algebra import (Element, LeibnizAlgebra, NotClosedError, _check_space, _coords, is_ideal,
                      is_nilpotent, is_subalgebra, left_mult_matrix, normalizer,
                      right_mult_matrix, subalgebra_closure, sum_col)
from .fields import GaussianRationals, PrimeField
from .linalg import (DimensionError, Subspace, is_invariant, is_nilpotent_operator,
                     fitting_split, kernel, lin_comb, restrict, span_rref, unit_vector,
                     vec_add, vec_is_zero)
from .poly import char_poly, poly_irreducible

RANDOM_CANDIDATES = 200
EXHAUSTIVE_LIMIT = 5 ** 6


def core_of(A: LeibnizAlgebra, M: Subspace) -> Subspace:
    """Largest ideal of A inside the subalgebra M."""
    _check_space(A, M)
    if not is_subalgebra(A, M):
        raise NotClosedError("core is defined for subalgebras")
    f, n = A.field, A.dim
    lefts = [left_mult_matrix(A, unit_vector(f, n, j)) for j in range(n)]
    rights = [right_mult_matrix(A, unit_vector(f, n, j)) for j in range(n)]
    I = M
    while not I.is_zero:
        ann = I.annihilator_rows()
        if not ann:
            return I
        # v = sum_t alpha_t b_t with y.[e_j, v] = y.[v, e_j] = 0 for all y, j
        rows = []
        for Mat in lefts + rights:
            for y in ann:
                w = [sum_col(f, y, Mat, c) for c in range(n)]
                rows.append(tuple(_dot(f, w, b) for b in I.basis))
        sols = kernel(f, rows, I.dim)
        J = span_rref(f, (lin_comb(f, s, I.basis, n) for s in sols), n)
        if J == I:
            return I
        I = J
    return I


def _dot(f, u, v):
    s = f.zero
    for a, b in zip(u, v):
        if not f.is_zero(a) and not f.is_zero(b):
            s = f.add(s, f.mul(a, b))
    return s


def candidate_stream(A: LeibnizAlgebra, seed: int = 0) -> Iterator[tuple]:
    """Basis vectors, then pairwise sums e_i + e_j, then seeded random rows in {0, ±1, ±2}."""
    f, n = A.field, A.dim
    for i in range(n):
        yield unit_vector(f, n, i)
    for i, j in itertools.combinations(range(n), 2):
        yield vec_add(f, unit_vector(f, n, i), unit_vector(f, n, j))
    rng = random.Random(seed)
    for _ in range(RANDOM_CANDIDATES):
        row = tuple(f.coerce(rng.choice((-2, -1, 0, 1, 2))) for _ in range(n))
        if not vec_is_zero(f, row):
            yield row


def find_nonnilpotent_element(A: LeibnizAlgebra, seed: int = 0) -> Element | None:
    for v in candidate_stream(A, seed):
        if not is_nilpotent_operator(left_mult_matrix(A, v)):
            return Element(A, v)
    return None


@dataclass(frozen=True)
class FittingPair:
    x: Element
    null: Subspace
    one: Subspace


def fitting_wrt(A: LeibnizAlgebra, x) -> FittingPair:
    v = _coords(A, x)
    null, one = fitting_split(left_mult_matrix(A, v))
    return FittingPair(Element(A, v), null, one)


@dataclass(frozen=True)
class CartanResult:
    subspace: Subspace | None
    element: Element | None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.subspace is not None


def find_cartan(A: LeibnizAlgebra, seed: int = 0) -> CartanResult:
    """Guess the Fitting null component of a non-nilpotent ℓ_x and verify it."""
    x = find_nonnilpotent_element(A, seed)
    if x is None:
        return CartanResult(None, None, "no element with non-nilpotent left multiplication")
    H = fitting_wrt(A, x).null
    if not is_subalgebra(A, H):
        return CartanResult(None, x, "Fitting null component is not a subalgebra")
    if not is_nilpotent(A, within=H):
        return CartanResult(None, x, "Fitting null component is not nilpotent")
    if normalizer(A, H) != H:
        return CartanResult(None, x, "Fitting null component is not self-normalizing")
    return CartanResult(H, x, "verified: subalgebra, nilpotent, self-normalizing")


@dataclass(frozen=True)
class NilradicalCertificate:
    holds: bool
    is_ideal: bool
    ideal_nilpotent: bool
    algebra_nonnilpotent: bool
    justification: str

    def __bool__(self):
        return self.holds


def is_nilradical_codim1(A: LeibnizAlgebra, I: Subspace) -> NilradicalCertificate:
    _check_space(A, I)
    if I.dim != A.dim - 1:
        raise DimensionError(f"expected a codimension-1 subspace, got dimension {I.dim} in {A.dim}")
    ideal = is_ideal(A, I)
    nil = ideal and is_nilpotent(A, within=I)
    nonnil = not is_nilpotent(A)
    holds = ideal and nil and nonnil
    if holds:
        why = ("I is a nilpotent ideal, so I lies in the nilradical; the only subspace strictly "
               "containing I is L itself, which is not nilpotent, so I is the nilradical")
    elif not ideal:
        why = "not an ideal"
    elif not nil:
        why = "ideal is not nilpotent"
    else:
        why = "the whole algebra is nilpotent, so its nilradical is L"
    return NilradicalCertificate(holds, ideal, nil, nonnil, why)


@dataclass(frozen=True)
class CyclicSearch:
    generator: Element | None
    exhaustive: bool     # True when every element was tried, so None means "not cyclic"

    @property
    def found(self) -> bool:
        return self.generator is not None


def _gaussian_pairs(A: LeibnizAlgebra):
    f, n = A.field, A.dim
    i_unit = f.parse("i")
    for a, b in itertools.combinations(range(n), 2):
        for ca, cb in ((f.one, i_unit), (i_unit, f.one), (i_unit, i_unit)):
            v = [f.zero] * n
            v[a], v[b] = ca, cb
            yield tuple(v)


def _all_vectors(A: LeibnizAlgebra):
    f = A.field
    for v in itertools.product(range(f.p), repeat=A.dim):
        if any(v):
            yield v


def is_cyclic(A: LeibnizAlgebra, seed: int = 0) -> CyclicSearch:
    """Search for a single generator of A."""
    full = A.full()
    stream = candidate_stream(A, seed)
    if isinstance(A.field, GaussianRationals):
        stream = itertools.chain(stream, _gaussian_pairs(A))
    for v in stream:
        if subalgebra_closure(A, [v]) == full:
            return CyclicSearch(Element(A, v), False)
    if isinstance(A.field, PrimeField) and A.field.p ** A.dim <= EXHAUSTIVE_LIMIT:
        for v in _all_vectors(A):
            if subalgebra_closure(A, [v]) == full:
                return CyclicSearch(Element(A, v), True)
        return CyclicSearch(None, True)
    return CyclicSearch(None, False)


def action_irreducible(A: LeibnizAlgebra, x, W: Subspace) -> bool | None:
    """Whether ℓ_x acts on W with irreducible characteristic polynomial.

    Returns None when irreducibility cannot be decided over Q or Q(i).
    """
    _check_space(A, W)
    L = left_mult_matrix(A, x)
    if not is_invariant(L, W):
        raise ValueError("W is not invariant under ℓ_x")
    if W.is_zero:
        return False
    res = poly_irreducible(char_poly(restrict(L, W)))
    if res.status == "inconclusive":
        return None
    return res.irreducible
