import pytest
from hypothesis import given, strategies as st

from leibniz_lab import (GF, QQ, LeibnizAlgebra, NotClosedError, construct_chain, construct_cyclic,
                         construct_standard, core_of, find_cartan, ideal_closure, is_cyclic, is_ideal,
                         is_nilpotent, is_nilradical_codim1, is_subalgebra, left_mult_matrix, normalizer,
                         subalgebra_closure)
from leibniz_lab import oracle
from leibniz_lab.algebra_file import transplant
from leibniz_lab.corpus import corpus_algebras
from leibniz_lab.linalg import DimensionError, is_invariant, is_nilpotent_operator, restrict
from leibniz_lab.structure import action_irreducible, find_nonnilpotent_element, fitting_wrt


@pytest.fixture
def ex1():
    return construct_cyclic(QQ, 2, (0, 1))


@pytest.fixture
def ex2():
    return construct_chain(QQ, 2, 3)


@pytest.fixture
def std():
    return construct_standard(QQ, (2, 0))


def test_core_examples(ex1, ex2):
    assert core_of(ex1, ex1.span([ex1["z"] - ex1["z^2"]])).is_zero
    N = ex2.span([ex2["x^2"], ex2["a^2"], ex2["a^3"]])
    M = N + ex2.span([ex2["x"]])
    assert core_of(ex2, M) == N
    assert core_of(ex1, ex1.full()).is_full


def test_core_requires_subalgebra(ex1):
    with pytest.raises(NotClosedError):
        core_of(ex1, ex1.span([ex1["z"]]))


def test_nonnilpotent_element_examples(ex1, std):
    assert find_nonnilpotent_element(ex1) == ex1["z"]
    assert find_nonnilpotent_element(std) == std["x"]
    assert find_nonnilpotent_element(construct_cyclic(QQ, 3, (0, 0, 0))) is None


def test_fitting_examples(ex1, std):
    fp = fitting_wrt(ex1, ex1["z"] - ex1["z^2"])
    assert fp.null == ex1.span([ex1["z"] - ex1["z^2"]]) and fp.one == ex1.span([ex1["z^2"]])
    nil = construct_cyclic(QQ, 3, (0, 0, 0))
    assert fitting_wrt(nil, nil["z"]).one.is_zero
    assert fitting_wrt(std, std["x"]).one == std.span([std["a0"], std["a1"]])


def test_cartan_examples(ex1, ex2):
    res = find_cartan(ex1)
    assert res.ok and res.subspace == ex1.span([ex1["z"] - ex1["z^2"]])
    res = find_cartan(ex2)
    # ℓ_x has eigenvalue i on a^i, so the null component of ℓ_x is span{x, x^2}
    assert res.ok and res.subspace == ex2.span([ex2["x"], ex2["x^2"]])
    bigger = ex2.span([ex2["x"], ex2["x^2"], ex2["a^2"], ex2["a^3"]])
    assert is_subalgebra(ex2, bigger) and not is_nilpotent(ex2, within=bigger)
    assert not find_cartan(construct_cyclic(QQ, 3, (0, 0, 0))).ok


def test_nilradical_examples(ex1, ex2):
    cert = is_nilradical_codim1(ex1, ex1.span([ex1["z^2"]]))
    assert cert.holds and cert.justification
    A = ex2.span([ex2["a"], ex2["a^2"], ex2["a^3"], ex2["x^2"]])
    assert is_nilradical_codim1(ex2, A)
    bad = is_nilradical_codim1(ex1, ex1.span([ex1["z"]]))
    assert not bad and not bad.is_ideal
    with pytest.raises(DimensionError):
        is_nilradical_codim1(ex2, ex2.span([ex2["a"]]))


def test_nilradical_maximality_probe(ex1, ex2):
    for L, I in [(ex1, ex1.span([ex1["z^2"]])),
                 (ex2, ex2.span([ex2["a"], ex2["a^2"], ex2["a^3"], ex2["x^2"]]))]:
        assert is_nilradical_codim1(L, I)
        for v in L.full().basis:
            if v not in I:
                assert ideal_closure(L, list(I.basis) + [v]).is_full


def test_cyclic_examples(ex1):
    res = is_cyclic(ex1)
    assert res.found and subalgebra_closure(ex1, [res.generator]).is_full
    ex2_gf5 = construct_chain(GF(5), 2, 3)
    res = is_cyclic(ex2_gf5)
    assert not res.found and res.exhaustive
    assert not is_cyclic(construct_chain(QQ, 2, 3)).found
    one = LeibnizAlgebra(QQ, 1, {})
    assert is_cyclic(one).generator == one.basis_element(0)


def test_action_irreducible_examples(ex1, std):
    x = ex1["z"] - ex1["z^2"]
    assert action_irreducible(ex1, x, ex1.span([ex1["z^2"]])) is True
    L1 = std.span([std["a0"], std["a1"]])
    assert action_irreducible(std, std["x"], L1) is True
    std7 = transplant(std, 7)
    assert action_irreducible(std7, std7["x"], std7.span([std7["a0"], std7["a1"]])) is False
    with pytest.raises(ValueError):
        action_irreducible(ex1, x, ex1.span([ex1["z"]]))


# -- properties --------------------------------------------------------------------

SMALL = [(name, A) for name, A in corpus_algebras(max_dim=4)]


@pytest.mark.parametrize("name, A", SMALL, ids=[n for n, _ in SMALL])
def test_core_matches_bruteforce_dim4(name, A):
    ideals = oracle.enumerate_ideals(A)
    for M in oracle.enumerate_subalgebras(A):
        core = core_of(A, M)
        assert is_ideal(A, core) and core <= M
        assert all(I <= core for I in ideals if I <= M)
        assert core == oracle.bruteforce_largest_ideal(A, M)


standard_params = st.tuples(st.sampled_from([QQ, GF(5), GF(7)]),
                            st.lists(st.integers(-2, 2), min_size=1, max_size=3).filter(lambda c: c[0] != 0))


@given(standard_params)
def test_cartan_verifies_when_found(params):
    F, cs = params
    if F.characteristic and cs[0] % F.characteristic == 0:
        return
    A = construct_standard(F, cs)
    res = find_cartan(A)
    if res.ok:
        H = res.subspace
        assert is_subalgebra(A, H) and is_nilpotent(A, within=H) and normalizer(A, H) == H


@given(standard_params, st.data())
def test_fitting_invariants(params, data):
    F, cs = params
    if F.characteristic and cs[0] % F.characteristic == 0:
        return
    A = construct_standard(F, cs)
    v = data.draw(st.lists(st.integers(-2, 2), min_size=A.dim, max_size=A.dim))
    fp = fitting_wrt(A, v)
    ell = left_mult_matrix(A, v)
    assert is_invariant(ell, fp.null) and is_invariant(ell, fp.one)
    assert (fp.null & fp.one).is_zero and (fp.null + fp.one).is_full
    if not fp.one.is_zero:
        assert restrict(ell, fp.one).determinant() != 0
    if not fp.null.is_zero:
        assert is_nilpotent_operator(restrict(ell, fp.null))
