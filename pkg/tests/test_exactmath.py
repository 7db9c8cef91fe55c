import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import gaussians, matrices, rationals, small_int
from leibniz_lab import GF, QQ, QQI, Matrix, Polynomial, char_poly, poly_irreducible, span_rref
from leibniz_lab.fields import FieldError, GaussianRational, I, Scalar, field_from_spec, field_to_spec
from leibniz_lab.linalg import (DimensionError, companion_basis, contains, fitting_split, full_space,
                                is_invariant, is_nilpotent_operator, kernel, restrict, subspace_combine,
                                zero_subspace)
from leibniz_lab.poly import from_recurrence, polynomial_from_strings


# -- scalars ------------------------------------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("3/4", GaussianRational(Fraction(3, 4), 0)),
    ("1/2+3/4i", GaussianRational(Fraction(1, 2), Fraction(3, 4))),
    ("1/2-3/4i", GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
    ("5/7i", GaussianRational(0, Fraction(5, 7))),
    ("i", I),
    ("-i", -I),
    ("2i", GaussianRational(0, 2)),
    ("-3", GaussianRational(-3, 0)),
])
def test_gaussian_parse(text, value):
    assert QQI.parse(text) == value


@given(gaussians)
def test_gaussian_format_roundtrip(z):
    assert QQI.parse(QQI.format(z)) == z


@given(rationals)
def test_rational_format_roundtrip(q):
    assert QQ.parse(QQ.format(q)) == q


def test_rational_rejects_imaginary():
    with pytest.raises(FieldError):
        QQ.parse("2i")


def test_prime_field_requires_prime():
    with pytest.raises(FieldError):
        GF(4)
    assert GF(7).parse("-2") == 5
    assert GF(7).characteristic == 7 and QQ.characteristic == 0 and QQI.characteristic == 0


@given(gaussians, gaussians.filter(lambda z: z != 0))
def test_gaussian_division_inverts_multiplication(a, b):
    assert (a * b) / b == a
    assert b * QQI.inv(b) == 1


@pytest.mark.parametrize("spec", ["Q", "Q(i)", {"GF": 5}])
def test_field_spec_roundtrip(spec):
    assert field_to_spec(field_from_spec(spec)) == spec


def test_scalar_arithmetic_stays_in_field():
    a = Scalar.parse(GF(5), "3")
    assert (a * a).value == 4
    assert (a + Scalar.parse(GF(5), "4")).value == 2


# -- span_rref and subspace calculus --------------------------------------------------

def test_span_examples():
    assert span_rref(QQ, [], 3).dim == 0
    full = span_rref(QQ, [(1, 0), (1, 1)], 2)
    assert full.basis == ((1, 0), (0, 1))
    assert span_rref(QQ, [(2, 4)], 2).basis == ((1, 2),)


def test_span_wrong_length():
    with pytest.raises(DimensionError):
        span_rref(QQ, [(1, 2, 3)], 2)


def test_combine_examples():
    U = span_rref(QQ, [(1, 0)], 2)
    V = span_rref(QQ, [(0, 1)], 2)
    W = span_rref(QQ, [(1, 1)], 2)
    assert subspace_combine(U, V, "sum").is_full
    assert subspace_combine(U, W, "intersection").is_zero
    assert contains(span_rref(QQ, [(1, 2)], 2), (2, 4))


def test_combine_ambient_mismatch():
    with pytest.raises(DimensionError):
        span_rref(QQ, [(1, 0)], 2) + span_rref(QQ, [(1, 0, 0)], 3)


vectors3 = st.lists(st.tuples(small_int, small_int, small_int), max_size=5)


@given(vectors3, st.randoms(use_true_random=False))
def test_span_order_insensitive_and_idempotent(vecs, rnd):
    S = span_rref(QQ, vecs, 3)
    shuffled = list(vecs)
    rnd.shuffle(shuffled)
    assert span_rref(QQ, shuffled, 3) == S
    assert span_rref(QQ, S.basis, 3) == S


def _all_subspaces_gf2(n):
    vecs = list(itertools.product(range(2), repeat=n))
    seen = set()
    for k in range(n + 1):
        for gens in itertools.combinations(vecs, k):
            S = span_rref(GF(2), gens, n)
            if S.basis not in seen:
                seen.add(S.basis)
                yield S


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_formula_exhaustive_gf2(n):
    subs = list(_all_subspaces_gf2(n))
    assert len(subs) == {1: 2, 2: 5, 3: 16, 4: 67}[n]
    for U in subs:
        for V in subs:
            assert U.dim + V.dim == (U + V).dim + (U & V).dim
            assert (U & V) <= U and U <= (U + V)


@given(vectors3, vectors3)
def test_dimension_formula_rationals(a, b):
    U, V = span_rref(QQ, a, 3), span_rref(QQ, b, 3)
    assert U.dim + V.dim == (U + V).dim + (U & V).dim
    for v in (U & V).basis:
        assert v in U and v in V


@given(matrices(QQ, 3))
def test_kernel_vectors_are_annihilated(T):
    for v in kernel(QQ, T.entries, 3):
        assert all(x == 0 for x in T.apply(v))
    assert len(kernel(QQ, T.entries, 3)) + T.rank() == 3


# -- char_poly ------------------------------------------------------------------------

def test_char_poly_examples():
    assert char_poly(Matrix.zeros(QQ, 2, 2)) == Polynomial(QQ, (0, 0, 1))
    comp = Matrix.from_rows(QQ, [(0, 2), (1, 0)])
    assert char_poly(comp) == Polynomial(QQ, (-2, 0, 1))
    assert char_poly(Matrix.from_rows(QQ, [(1,)])) == Polynomial(QQ, (-1, 1))


def test_char_poly_rejects_non_square():
    with pytest.raises(DimensionError):
        char_poly(Matrix.from_rows(QQ, [(1, 2)]))


def _char_poly_by_interpolation(T: Matrix) -> Polynomial:
    """det(t I - T) at n+1 points, then Lagrange interpolation."""
    f, n = T.field, T.rows
    pts = list(range(n + 1))
    vals = [(T.identity(f, n).scale(f.coerce(t)) - T).determinant() for t in pts]
    total = Polynomial(f, ())
    for i, ti in enumerate(pts):
        term = Polynomial.constant(f, vals[i])
        for j, tj in enumerate(pts):
            if j != i:
                term = term * Polynomial(f, (f.coerce(-tj), f.one))
                term = term * Polynomial.constant(f, f.inv(f.coerce(ti - tj)))
        total = total + term
    return total


@given(st.integers(1, 4).flatmap(lambda n: matrices(QQ, n)))
def test_berkowitz_matches_determinant_interpolation(T):
    assert char_poly(T) == _char_poly_by_interpolation(T)


@given(st.integers(1, 3).flatmap(lambda n: matrices(QQI, n, gaussians)))
def test_cayley_hamilton_gaussian(T):
    assert char_poly(T).eval_matrix(T).is_zero()


@given(st.integers(1, 4).flatmap(lambda n: matrices(GF(5), n)))
def test_cayley_hamilton_gf5(T):
    p = char_poly(T)
    assert p.degree == T.rows and p.lead == 1
    assert p.eval_matrix(T).is_zero()


# -- nilpotency and Fitting ----------------------------------------------------------

def test_nilpotent_operator_examples():
    assert is_nilpotent_operator(Matrix.from_rows(QQ, [(0, 1, 2), (0, 0, 3), (0, 0, 0)]))
    assert not is_nilpotent_operator(Matrix.identity(QQ, 2))
    # ℓ_{z - z^2} on the two-dimensional cyclic algebra zz = z^2, z z^2 = z^2
    ell = Matrix.from_rows(QQ, [(0, 0), (1, 1)])
    assert not is_nilpotent_operator(ell)


def test_fitting_examples():
    nil = Matrix.from_rows(QQ, [(0, 1), (0, 0)])
    null, one = fitting_split(nil)
    assert null.is_full and one.is_zero
    null, one = fitting_split(Matrix.identity(QQ, 3))
    assert null.is_zero and one.is_full
    ell = Matrix.from_rows(QQ, [(0, 0), (1, 1)])
    null, one = fitting_split(ell)
    assert one == span_rref(QQ, [(0, 1)], 2)
    assert null == span_rref(QQ, [(1, -1)], 2)


def _check_fitting(T):
    null, one = fitting_split(T)
    assert is_invariant(T, null) and is_invariant(T, one)
    assert (null & one).is_zero and (null + one).is_full
    if not one.is_zero:
        assert restrict(T, one).determinant() != 0
    if not null.is_zero:
        assert is_nilpotent_operator(restrict(T, null))


@given(st.integers(1, 4).flatmap(lambda n: matrices(QQ, n)))
def test_fitting_invariants_rational(T):
    _check_fitting(T)


@given(st.integers(1, 4).flatmap(lambda n: matrices(GF(3), n)))
def test_fitting_invariants_gf3(T):
    _check_fitting(T)


# -- companion / Krylov -------------------------------------------------------------

def test_companion_examples():
    kb = companion_basis(Matrix.from_rows(QQ, [(1,)]), (1,))
    assert kb.basis == ((1,),) and kb.coeffs == (1,)
    kb = companion_basis(Matrix.from_rows(QQ, [(0, 2), (1, 0)]), (1, 0))
    assert kb.basis == ((1, 0), (0, 1)) and kb.coeffs == (2, 0)
    kb = companion_basis(Matrix.zeros(QQ, 2, 2), (1, 0))
    assert kb.basis == ((1, 0),) and kb.coeffs == (0,)


def test_companion_errors():
    with pytest.raises(ValueError):
        companion_basis(Matrix.identity(QQ, 2), (0, 0))
    with pytest.raises(ValueError):
        companion_basis(Matrix.identity(QQ, 2), (1, 0), require_cyclic=True)


@given(st.integers(1, 4).flatmap(lambda n: matrices(QQ, n)), st.data())
def test_krylov_relation_holds(T, data):
    n = T.rows
    seed = data.draw(st.tuples(*[small_int] * n).filter(any))
    kb = companion_basis(T, seed)
    last = T.apply(kb.basis[-1])
    combo = [sum(c * b[r] for c, b in zip(kb.coeffs, kb.basis)) for r in range(n)]
    assert list(last) == combo
    if kb.k + 1 == n:
        assert char_poly(T) == from_recurrence(QQ, kb.coeffs)


# -- irreducibility -------------------------------------------------------------------

def P(field, *coeffs):
    return Polynomial(field, tuple(field.coerce(c) for c in coeffs))


def test_irreducibility_examples():
    assert poly_irreducible(P(QQ, -1, 1)).irreducible
    assert poly_irreducible(P(GF(3), -2, 0, 1)).irreducible
    res = poly_irreducible(P(QQ, -1, 0, 1))
    assert res.reducible and res.factor in (P(QQ, -1, 1), P(QQ, 1, 1))


def test_irreducibility_rejects_constants():
    with pytest.raises(ValueError):
        poly_irreducible(P(QQ, 3))
    with pytest.raises(ValueError):
        poly_irreducible(Polynomial(QQ, ()))


@pytest.mark.parametrize("coeffs, expected", [
    ((-2, 0, 1), "irreducible"),
    ((1, 0, 0, 0, 1), "irreducible"),            # cyclotomic, no roots, no quadratic factor over Q
    ((4, 0, 0, 0, 1), "reducible"),              # (λ²+2λ+2)(λ²−2λ+2)
    ((1, 1, 1, 1, 1), "irreducible"),
    ((-2, 0, 0, 0, 0, 1), "irreducible"),         # Eisenstein
    ((1, 0, 2, 0, 1), "reducible"),              # (λ²+1)²
    ((2, -3, 1), "reducible"),
    ((-1, -1, 0, 0, 0, 1), "irreducible"),        # λ⁵−λ−1
])
def test_irreducibility_over_q(coeffs, expected):
    f = P(QQ, *coeffs)
    res = poly_irreducible(f)
    assert res.status == expected
    if res.reducible:
        assert (f % res.factor).is_zero


@pytest.mark.parametrize("coeffs, expected", [
    ((1, 0, 1), "reducible"),        # (λ−i)(λ+i)
    ((-2, 0, 1), "irreducible"),
    ((-I, 0, 1), "irreducible"),     # square roots of i are not Gaussian rationals
    ((-2 * I, 0, 1), "reducible"),   # (1+i)² = 2i
    ((1, 0, 0, 0, 1), "reducible"),  # (λ²−i)(λ²+i)
    ((-2, 0, 0, 0, 1), "irreducible"),
])
def test_irreducibility_over_gaussian(coeffs, expected):
    f = P(QQI, *coeffs)
    res = poly_irreducible(f)
    assert res.status == expected
    if res.reducible:
        assert (f % res.factor).is_zero


def _brute_irreducible_gfp(f: Polynomial) -> bool:
    F, p = f.field, f.field.p
    for d in range(1, f.degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if (f % Polynomial(F, tail + (1,))).is_zero:
                return False
    return True


@given(st.sampled_from([2, 3, 5]).flatmap(
    lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=2, max_size=5))))
def test_rabin_matches_brute_force(args):
    p, tail = args
    f = Polynomial(GF(p), tuple(tail) + (1,))
    res = poly_irreducible(f)
    assert res.status in ("irreducible", "reducible")
    assert res.irreducible == _brute_irreducible_gfp(f)
    if res.reducible:
        assert (f % res.factor).is_zero and 1 <= res.factor.degree < f.degree


@given(st.lists(small_int, min_size=2, max_size=4).filter(lambda c: c[-1] != 0),
       st.lists(small_int, min_size=2, max_size=4).filter(lambda c: c[-1] != 0))
def test_products_are_reducible_and_deterministic(a, b):
    f = P(QQ, *a) * P(QQ, *b)
    first = poly_irreducible(f)
    assert first == poly_irreducible(f)
    assert first.reducible
    g = first.factor
    assert (f % g).is_zero and 1 <= g.degree < f.degree


gauss_small = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))


@settings(max_examples=25)
@given(st.lists(gauss_small, min_size=2, max_size=4).filter(lambda c: c[-1] != 0),
       st.lists(gauss_small, min_size=2, max_size=4).filter(lambda c: c[-1] != 0))
def test_gaussian_products_are_reducible(a, b):
    f = P(QQI, *a) * P(QQI, *b)
    res = poly_irreducible(f)
    assert res.reducible
    assert (f % res.factor).is_zero and 1 <= res.factor.degree < f.degree


def test_lifted_search_recovers_known_factor():
    # (λ^4 + λ + 1)(λ^4 - 2λ^3 + 3): both quartics irreducible, no modular shortcut
    f = P(QQ, 1, 1, 0, 0, 1) * P(QQ, 3, 0, 0, -2, 1)
    res = poly_irreducible(f)
    assert res.reducible and res.factor.degree == 4
    assert res.factor in (P(QQ, 1, 1, 0, 0, 1), P(QQ, 3, 0, 0, -2, 1))


def test_polynomial_from_strings():
    assert polynomial_from_strings(QQI, ["1", "0", "-i"]) == P(QQI, 1, 0, -I)
