"""Constructors for the minimal nonnilpotent families and the structure verifier.

``verify_theorem`` walks an input algebra through the decomposition
L = N ⊕ L1 ⊕ F with A = L1 ⊕ N the codimension-one nilradical and ℓ_x acting
on L1 as the companion matrix of p(λ) = λ^{k+1} - c_k λ^k - ... - c_0.
A returned certificate means every clause was checked and holds; the first
failing stage raises :class:`TheoremFailure`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .algebra import (Element, LeibnizAlgebra, is_ideal, is_nilpotent, is_solvable,
                      is_subalgebra, leibniz_kernel, left_mult_matrix, product_space,
                      require_leibniz, subalgebra_closure, validate_leibniz)
from .fields import Field, field_to_spec
from .linalg import (Subspace, companion_basis, contains, null_space, quotient_operator, restrict,
                     span_rref, vec_add, vec_is_zero)
from .poly import Polynomial, from_recurrence, poly_irreducible
from .structure import core_of, find_cartan, fitting_wrt, is_cyclic, is_nilradical_codim1

CERT_SCHEMA = "minnon-cert/1"

STAGES = (
    "hypothesis",
    "nonnilpotent_element",
    "cartan",
    "N",
    "x_squared",
    "A",
    "L1",
    "N_L1",
    "N_formula",
    "A_cubed",
    "companion",
    "irreducibility",
    "dichotomy",
    "nilradical",
    "core",
    "decomposition",
)


class TheoremFailure(Exception):
    def __init__(self, stage: str, message: str, evidence: dict | None = None):
        self.stage = stage
        self.message = message
        self.evidence = evidence or {}
        super().__init__(f"[{stage}] {message}")


# -- constructors -----------------------------------------------------------------

def construct_standard(field: Field, coeffs: Sequence) -> LeibnizAlgebra:
    """Basis x, a_0..a_k with x a_i = a_{i+1} (i < k) and x a_k = c_0 a_0 + ... + c_k a_k."""
    cs = [field.coerce(c) for c in coeffs]
    if not cs:
        raise ValueError("need at least one coefficient c_0")
    if field.is_zero(cs[0]):
        raise ValueError("c_0 must be nonzero")
    k = len(cs) - 1
    n = k + 2
    table = {}
    for i in range(k):
        row = [field.zero] * n
        row[i + 2] = field.one
        table[(0, i + 1)] = row
    table[(0, k + 1)] = [field.zero] + cs
    labels = ("x",) + tuple(f"a{i}" for i in range(k + 1))
    meta = {"family": "standard", "coeffs": tuple(cs), "p": from_recurrence(field, cs)}
    return require_leibniz(LeibnizAlgebra(field, n, table, labels, meta))


def construct_chain(field: Field, j: int, k: int) -> LeibnizAlgebra:
    """x..x^j, a..a^k with xa = a = -ax, x a^i = i a^i, left-normed power chains."""
    if j < 1 or k < 1:
        raise ValueError("need j >= 1 and k >= 1")
    if field.characteristic and field.characteristic <= k:
        raise ValueError(f"characteristic {field.characteristic} must exceed k = {k}")
    n = j + k
    xs = list(range(j))
    as_ = list(range(j, j + k))

    def row(idx, c=1):
        r = [field.zero] * n
        r[idx] = field.coerce(c)
        return r

    table = {}
    for i in range(1, j):
        table[(xs[0], xs[i - 1])] = row(xs[i])
    for i in range(1, k):
        table[(as_[0], as_[i - 1])] = row(as_[i])
    table[(xs[0], as_[0])] = row(as_[0])
    table[(as_[0], xs[0])] = row(as_[0], -1)
    for i in range(2, k + 1):
        table[(xs[0], as_[i - 1])] = row(as_[i - 1], i)
    labels = tuple("x" if i == 1 else f"x^{i}" for i in range(1, j + 1)) + \
        tuple("a" if i == 1 else f"a^{i}" for i in range(1, k + 1))
    meta = {"family": "chain", "j": j, "k": k}
    return require_leibniz(LeibnizAlgebra(field, n, table, labels, meta))


def construct_cyclic(field: Field, d: int, top_coeffs: Sequence) -> LeibnizAlgebra:
    """z, z^2..z^d with z z^i = z^{i+1} and z z^d = sum top_i z^i; raises on invalid tables."""
    if d < 1:
        raise ValueError("need d >= 1")
    top = [field.coerce(c) for c in top_coeffs]
    if len(top) != d:
        raise ValueError(f"need {d} coefficients for z*z^{d}, got {len(top)}")
    table = {}
    for i in range(1, d):
        r = [field.zero] * d
        r[i] = field.one
        table[(0, i - 1)] = r
    table[(0, d - 1)] = top
    labels = tuple("z" if i == 1 else f"z^{i}" for i in range(1, d + 1))
    meta = {"family": "cyclic", "d": d, "top": tuple(top)}
    return require_leibniz(LeibnizAlgebra(field, d, table, labels, meta))


# -- certificate --------------------------------------------------------------------

@dataclass(frozen=True)
class MinNonCertificate:
    algebra: LeibnizAlgebra
    x: Element
    x_squared_in_N: bool
    N: Subspace
    L1: Subspace
    F: Subspace
    A: Subspace
    M: Subspace
    cartan: Subspace
    companion: tuple          # a_0..a_k as Elements
    coeffs: tuple             # c_0..c_k
    p: Polynomial
    c0_nonzero: bool
    p_irreducible: str        # "irreducible" | "inconclusive"
    N_formula_holds: bool
    N_is_core: bool
    N_L1_zero: bool
    A_is_nilradical: bool
    A_cubed: Subspace
    A_cubed_in_leib: bool
    leib: Subspace
    dichotomy: str            # "cyclic" | "leib_in_N"
    generator: Element | None
    decomposition_ok: bool
    open_clauses: tuple = dc_field(default=())

    @property
    def k(self) -> int:
        return len(self.companion) - 1

    def to_json(self) -> dict[str, Any]:
        A = self.algebra
        f = A.field

        def vec(v):
            return [f.format(a) for a in v]

        def sub(S):
            return [vec(r) for r in S.basis]

        return {
            "schema": CERT_SCHEMA,
            "field": field_to_spec(f),
            "basis": list(A.labels),
            "x": vec(self.x.coords),
            "x_squared_in_N": self.x_squared_in_N,
            "N": sub(self.N),
            "L1": sub(self.L1),
            "F": sub(self.F),
            "A": sub(self.A),
            "M": sub(self.M),
            "cartan": sub(self.cartan),
            "companion_basis": [vec(a.coords) for a in self.companion],
            "c": vec(self.coeffs),
            "p": self.p.format_coeffs(),
            "c0_nonzero": self.c0_nonzero,
            "p_irreducible": self.p_irreducible,
            "N_formula_holds": self.N_formula_holds,
            "N_is_core": self.N_is_core,
            "N_L1_zero": self.N_L1_zero,
            "A_is_nilradical": self.A_is_nilradical,
            "A_cubed": sub(self.A_cubed),
            "A_cubed_in_leib": self.A_cubed_in_leib,
            "leib": sub(self.leib),
            "dichotomy": self.dichotomy,
            "generator": vec(self.generator.coords) if self.generator is not None else None,
            "decomposition_ok": self.decomposition_ok,
            "open_clauses": list(self.open_clauses),
        }


def certificate_from_json(A: LeibnizAlgebra, data: dict) -> MinNonCertificate:
    """Rebuild a certificate for algebra A from :meth:`MinNonCertificate.to_json` output."""
    if data.get("schema") != CERT_SCHEMA:
        raise ValueError(f"unexpected certificate schema {data.get('schema')!r}")
    f, n = A.field, A.dim

    def vec(v):
        return tuple(f.parse(s) for s in v)

    def sub(rows):
        return span_rref(f, [vec(r) for r in rows], n)

    gen = data["generator"]
    return MinNonCertificate(
        algebra=A, x=Element(A, vec(data["x"])), x_squared_in_N=data["x_squared_in_N"],
        N=sub(data["N"]), L1=sub(data["L1"]), F=sub(data["F"]), A=sub(data["A"]), M=sub(data["M"]),
        cartan=sub(data["cartan"]),
        companion=tuple(Element(A, vec(a)) for a in data["companion_basis"]),
        coeffs=vec(data["c"]), p=Polynomial(f, vec(data["p"])), c0_nonzero=data["c0_nonzero"],
        p_irreducible=data["p_irreducible"], N_formula_holds=data["N_formula_holds"],
        N_is_core=data["N_is_core"], N_L1_zero=data["N_L1_zero"],
        A_is_nilradical=data["A_is_nilradical"], A_cubed=sub(data["A_cubed"]),
        A_cubed_in_leib=data["A_cubed_in_leib"], leib=sub(data["leib"]),
        dichotomy=data["dichotomy"], generator=Element(A, vec(gen)) if gen is not None else None,
        decomposition_ok=data["decomposition_ok"], open_clauses=tuple(data["open_clauses"]),
    )


# -- verifier -----------------------------------------------------------------------

def cyclic_subalgebra(A: LeibnizAlgebra, x) -> Subspace:
    return subalgebra_closure(A, [x])


def square(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    return product_space(A, S, S)


def _generated_square(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    if S.is_zero:
        return S
    return square(A, subalgebra_closure(A, S.basis))


def _seeds(S: Subspace):
    yield from S.basis
    for u, v in itertools.combinations(S.basis, 2):
        yield vec_add(S.field, u, v)


def verify_theorem(A: LeibnizAlgebra, seed: int = 0) -> MinNonCertificate:
    f, n = A.field, A.dim
    fmt = A.format_subspace

    # hypothesis gate
    check = validate_leibniz(A)
    if not check.ok:
        raise TheoremFailure("hypothesis", "not a Leibniz algebra", {"witness": check.witness})
    if not is_solvable(A):
        raise TheoremFailure("hypothesis", "algebra is not solvable")
    if is_nilpotent(A):
        raise TheoremFailure("hypothesis", "algebra is nilpotent")

    cart = find_cartan(A, seed)
    if cart.element is None:
        raise TheoremFailure("nonnilpotent_element", cart.reason)
    if not cart.ok:
        raise TheoremFailure("cartan", cart.reason, {"element": str(cart.element)})
    H = cart.subspace

    # x: an element of the Cartan subalgebra acting non-nilpotently
    x = None
    for v in _seeds(H):
        fp = fitting_wrt(A, v)
        if not fp.one.is_zero:
            x = v
            break
    if x is None:
        raise TheoremFailure("cartan", "no element of the Cartan subalgebra acts non-nilpotently",
                             {"cartan": fmt(H)})
    L1_fit = fp.one
    lx = left_mult_matrix(A, x)

    gen_x = cyclic_subalgebra(A, x)
    x_sq = square(A, gen_x)
    N = _generated_square(A, L1_fit) + x_sq
    if not is_ideal(A, N):
        raise TheoremFailure("N", "(L1)^2 + <x>^2 is not an ideal", {"N": fmt(N)})

    x2 = A.bracket_vec(x, x)
    if not contains(N, x2):
        raise TheoremFailure("x_squared", "x^2 is not in N", {"x^2": A.format_vector(x2), "N": fmt(N)})

    Asp = L1_fit + N
    if Asp.dim != n - 1 or contains(Asp, x) or not is_ideal(A, Asp):
        raise TheoremFailure("A", "L1 + N is not a codimension-1 ideal complementing x",
                             {"A": fmt(Asp), "dim": Asp.dim})

    # action of x on A/N: needs a cyclic vector; L1 is then the kernel of p(ℓ_x) inside A
    T_bar, cols = quotient_operator(lx, N)
    A_bar = span_rref(f, [tuple(N.reduce(b)[c] for c in cols) for b in Asp.basis], len(cols))
    T_A = restrict(T_bar, A_bar)
    kry_bar = None
    for s in _seeds(span_rref(f, [tuple(1 if i == j else 0 for i in range(A_bar.dim))
                                  for j in range(A_bar.dim)], A_bar.dim)):
        kb = companion_basis(T_A, s)
        if len(kb.basis) == A_bar.dim:
            kry_bar = kb
            break
    if kry_bar is None:
        raise TheoremFailure("L1", "ℓ_x has no cyclic vector on A/N (reducible action)")
    p_bar = from_recurrence(f, kry_bar.coeffs)
    L1 = null_space(p_bar.eval_matrix(lx)) & Asp
    if not (L1 & N).is_zero or (L1 + N) != Asp:
        raise TheoremFailure("L1", "no ℓ_x-invariant complement of N in A",
                             {"L1": fmt(L1), "N": fmt(N)})

    if not product_space(A, N, L1).is_zero:
        raise TheoremFailure("N_L1", "[N, L1] is not zero", {"[N,L1]": fmt(product_space(A, N, L1))})

    kry = None
    for s in _seeds(L1):
        kb = companion_basis(lx, s)
        if len(kb.basis) == L1.dim:
            kry = kb
            break
    assert kry is not None  # L1 is isomorphic to A/N as an ℓ_x-module
    a_span = span_rref(f, kry.basis, n)
    N_stmt = x_sq + _generated_square(A, a_span)
    if N_stmt != N:
        raise TheoremFailure("N_formula", "<x>^2 + <a_0..a_k>^2 differs from N",
                             {"statement": fmt(N_stmt), "proof": fmt(N)})

    leib = leibniz_kernel(A)
    A_cubed = product_space(A, Asp, square(A, Asp))
    if not A_cubed <= leib:
        raise TheoremFailure("A_cubed", "A^3 is not inside Leib(L)", {"A^3": fmt(A_cubed), "Leib": fmt(leib)})

    coeffs = kry.coeffs
    p = from_recurrence(f, coeffs)
    if f.is_zero(coeffs[0]):
        raise TheoremFailure("companion", "c_0 = 0", {"c": [f.format(c) for c in coeffs]})
    if p != p_bar:
        raise TheoremFailure("companion", "recurrence on L1 differs from the action on A/N",
                             {"p": str(p), "p_bar": str(p_bar)})

    irr = poly_irreducible(p)
    open_clauses = []
    if irr.reducible:
        raise TheoremFailure("irreducibility", f"p(λ) = {p} is reducible",
                             {"factor": str(irr.factor), "p": str(p)})
    if irr.status == "inconclusive":
        open_clauses.append(f"irreducibility of {p}: {irr.reason}")

    generator = None
    if leib <= N:
        dichotomy = "leib_in_N"
    else:
        cyc = is_cyclic(A, seed)
        if not cyc.found:
            raise TheoremFailure("dichotomy", "L is not cyclic (within search) and Leib(L) is not inside N",
                                 {"Leib": fmt(leib), "N": fmt(N), "exhaustive": cyc.exhaustive})
        dichotomy = "cyclic"
        generator = cyc.generator

    nil = is_nilradical_codim1(A, Asp)
    if not nil:
        raise TheoremFailure("nilradical", nil.justification, {"A": fmt(Asp)})

    F = span_rref(f, [x], n)
    M = F + N
    if not is_subalgebra(A, M) or core_of(A, M) != N:
        raise TheoremFailure("core", "N is not the core of M = F + N", {"M": fmt(M)})

    decomposition = (N.dim + L1.dim + F.dim == n) and (N + L1 + F).is_full
    if not decomposition:
        raise TheoremFailure("decomposition", "L is not N ⊕ L1 ⊕ F")

    return MinNonCertificate(
        algebra=A, x=Element(A, x), x_squared_in_N=True, N=N, L1=L1, F=F, A=Asp, M=M, cartan=H,
        companion=tuple(Element(A, a) for a in kry.basis), coeffs=tuple(coeffs), p=p,
        c0_nonzero=True, p_irreducible=irr.status, N_formula_holds=True, N_is_core=True,
        N_L1_zero=True, A_is_nilradical=True, A_cubed=A_cubed, A_cubed_in_leib=True, leib=leib,
        dichotomy=dichotomy, generator=generator, decomposition_ok=True,
        open_clauses=tuple(open_clauses),
    )


def check_remark_products(A: LeibnizAlgebra, cert: MinNonCertificate) -> bool:
    """[a_i, x] + [x, a_i] ∈ Leib(L) and [a_i, a_j] ∈ N for all i, j."""
    f = A.field
    leib = leibniz_kernel(A)
    x = cert.x.coords
    for a in cert.companion:
        s = vec_add(f, A.bracket_vec(a.coords, x), A.bracket_vec(x, a.coords))
        if not contains(leib, s):
            return False
        for b in cert.companion:
            if not contains(cert.N, A.bracket_vec(a.coords, b.coords)):
                return False
    return True


def recheck_certificate(cert: MinNonCertificate) -> dict[str, bool]:
    """Independently re-evaluate the certificate's claims from its stored data."""
    A = cert.algebra
    f, n = A.field, A.dim
    x = cert.x.coords
    lx = left_mult_matrix(A, x)
    a = [e.coords for e in cert.companion]
    chain_ok = all(lx.apply(a[i]) == a[i + 1] for i in range(len(a) - 1))
    last = lx.apply(a[-1])
    combo = (f.zero,) * n
    for c, v in zip(cert.coeffs, a):
        combo = vec_add(f, combo, tuple(f.mul(c, t) for t in v))
    gen_x = cyclic_subalgebra(A, x)
    N_stmt = square(A, gen_x) + _generated_square(A, span_rref(f, a, n))
    leib = leibniz_kernel(A)
    checks = {
        "companion_products": chain_ok and last == combo,
        "c0_nonzero": not f.is_zero(cert.coeffs[0]),
        "x_squared_in_N": contains(cert.N, A.bracket_vec(x, x)),
        "N_formula": N_stmt == cert.N,
        "N_ideal": is_ideal(A, cert.N),
        "A_ideal": is_ideal(A, cert.A),
        "A_is_nilradical": bool(is_nilradical_codim1(A, cert.A)),
        "A_cubed_in_leib": product_space(A, cert.A, square(A, cert.A)) <= leib,
        "p_matches": cert.p == from_recurrence(f, cert.coeffs),
        "decomposition": (cert.N.dim + cert.L1.dim + cert.F.dim == n) and (cert.N + cert.L1 + cert.F).is_full,
        "A_equals_L1_plus_N": cert.A == cert.L1 + cert.N,
        "N_L1_zero": product_space(A, cert.N, cert.L1).is_zero,
        "leib_matches": leib == cert.leib,
    }
    if cert.dichotomy == "leib_in_N":
        checks["dichotomy"] = leib <= cert.N
    else:
        checks["dichotomy"] = cert.generator is not None and \
            subalgebra_closure(A, [cert.generator.coords]) == A.full()
    if cert.p_irreducible == "irreducible":
        checks["p_irreducible"] = poly_irreducible(cert.p).irreducible
    return checks
