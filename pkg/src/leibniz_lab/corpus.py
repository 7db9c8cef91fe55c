"""Finite-field corpus of constructed algebras and the cross-validation sweep."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator

from . import oracle
from .algebra import (LeibnizAlgebra, LeibnizIdentityError, is_lie, is_nilpotent, leibniz_kernel,
                      left_mult_matrix, quotient, restrict_algebra)
from .classify import construct_chain, construct_cyclic, construct_standard
from .fields import GF
from .structure import core_of

PRIMES = (2, 3, 5)
MAX_DIM = 5

STANDARD_COEFFS = [(1,), (2,), (1, 1), (2, 0), (1, 0), (1, 1, 0), (1, 0, 1), (1, 1, 0, 0), (2, 0, 0, 1)]
CYCLIC_TOPS = [(0,), (0, 1), (0, 0), (0, 1, 1), (0, 0, 1), (0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0, 1),
               (0, 0, 0, 0, 0)]


def corpus_algebras(primes=PRIMES, max_dim: int = MAX_DIM) -> Iterator[tuple[str, LeibnizAlgebra]]:
    """Deterministic list of (name, algebra) over the given prime fields."""
    for p in primes:
        F = GF(p)
        seen = set()
        for cs in STANDARD_COEFFS:
            red = tuple(c % p for c in cs)
            if red[0] == 0 or red in seen or len(red) + 1 > max_dim:
                continue
            seen.add(red)
            yield f"standard{red}/GF({p})", construct_standard(F, red)
        for j in range(1, max_dim):
            for k in range(1, max_dim - j + 1):
                if k < p:
                    yield f"chain(j={j},k={k})/GF({p})", construct_chain(F, j, k)
        seen = set()
        for top in CYCLIC_TOPS:
            red = tuple(c % p for c in top)
            if len(red) > max_dim or red in seen:
                continue
            seen.add(red)
            try:
                yield f"cyclic{red}/GF({p})", construct_cyclic(F, len(red), red)
            except LeibnizIdentityError:
                continue


@dataclass
class CrossReport:
    algebras: int = 0
    derived: int = 0
    checks: dict = dc_field(default_factory=dict)
    disagreements: list = dc_field(default_factory=list)

    def record(self, check: str, ok: bool, where: str):
        self.checks[check] = self.checks.get(check, 0) + 1
        if not ok:
            self.disagreements.append((check, where))


def _key(B: LeibnizAlgebra):
    return (B.field, B.dim, tuple(sorted(B.table.items())))


def _check_algebra(B: LeibnizAlgebra, name: str, rep: CrossReport, cache: dict):
    key = _key(B)
    if key in cache:
        for check, ok in cache[key]:
            rep.record(check, ok, name)
        return
    results = []
    results.append(("nilpotent_methods_agree",
                    is_nilpotent(B, method="series") == is_nilpotent(B, method="normalizer")))
    leib = leibniz_kernel(B)
    results.append(("leib_left_annihilates", all(left_mult_matrix(B, v).is_zero() for v in leib.basis)))
    if leib.dim < B.dim:
        Q = quotient(B, leib)
        results.append(("quotient_by_leib_is_lie", is_lie(Q.algebra)))
    for check, ok in results:
        rep.record(check, ok, name)
    cache[key] = results


def _projection_is_homomorphism(A: LeibnizAlgebra, Q) -> bool:
    B = Q.algebra
    n = A.dim
    units = A.full().basis
    for i in range(n):
        for j in range(n):
            lhs = Q.project(A.bracket_vec(units[i], units[j]))
            rhs = B.bracket_vec(Q.project(units[i]), Q.project(units[j]))
            if lhs != rhs:
                return False
    return True


def cross_validate(algebras=None, budget: oracle.EnumerationBudget | None = None) -> CrossReport:
    rep = CrossReport()
    cache: dict = {}
    for name, L in (algebras if algebras is not None else corpus_algebras()):
        rep.algebras += 1
        _check_algebra(L, name, rep, cache)
        ideals = oracle.enumerate_ideals(L, budget)
        for M in oracle.enumerate_subalgebras(L, budget):
            if M.is_zero:
                continue
            inside = [I for I in ideals if I <= M]
            brute = max(inside, key=lambda I: I.dim)
            rep.record("core_matches_bruteforce", core_of(L, M) == brute, f"{name} M={M}")
            if M.dim < L.dim:
                rep.derived += 1
                _check_algebra(restrict_algebra(L, M), f"{name} sub {M}", rep, cache)
        for I in ideals:
            if I.dim == L.dim:
                continue
            Q = quotient(L, I)
            rep.derived += 1
            rep.record("projection_homomorphism", _projection_is_homomorphism(L, Q), f"{name} / {I}")
            _check_algebra(Q.algebra, f"{name} / {I}", rep, cache)
    return rep
