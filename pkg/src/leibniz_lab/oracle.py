"""Exhaustive ground truth over GF(p): every subspace, subalgebra and ideal.

Subspaces are generated in RREF normal form, by dimension, then pivot pattern
(lexicographic), then free entries (lexicographic), so witnesses are
reproducible.  Closure and normalizer tests run batched over all subspaces
sharing a pivot pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterator

import numpy as np

from .algebra import (LeibnizAlgebra, is_ideal, is_nilpotent, is_solvable, is_subalgebra,
                      quotient, _check_space)
from .fields import Field, PrimeField
from .linalg import Subspace, zero_subspace

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """The enumeration would visit more subspaces than the budget allows."""


class OracleFieldError(ValueError):
    """The oracle only works over prime fields."""


@dataclass(frozen=True)
class EnumerationBudget:
    max_subspaces: int = DEFAULT_BUDGET


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _prime(field: Field) -> int:
    if not isinstance(field, PrimeField):
        raise OracleFieldError(f"exhaustive enumeration needs a prime field, got {field}")
    return field.p


def _check_budget(n: int, p: int, budget: EnumerationBudget | None):
    limit = (budget or EnumerationBudget()).max_subspaces
    total = subspace_count(n, p)
    if total > limit:
        raise BudgetExceeded(f"{total} subspaces of GF({p})^{n} exceed the budget of {limit}")


def _pattern_bases(p: int, n: int, pivots: tuple) -> np.ndarray:
    k = len(pivots)
    piv = set(pivots)
    free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in piv]
    template = np.zeros((k, n), dtype=np.int64)
    for r, c in enumerate(pivots):
        template[r, c] = 1
    m = len(free)
    count = p ** m
    out = np.broadcast_to(template, (count, k, n)).copy()
    if m:
        vals = np.indices((p,) * m).reshape(m, -1).T
        rows = [r for r, _ in free]
        cols = [c for _, c in free]
        out[:, rows, cols] = vals
    return out


def _batches(p: int, n: int, dims=None) -> Iterator[tuple[tuple, np.ndarray]]:
    for k in (range(n + 1) if dims is None else dims):
        for pivots in itertools.combinations(range(n), k):
            yield pivots, _pattern_bases(p, n, pivots)


def _to_subspace(field: Field, n: int, pivots: tuple, basis: np.ndarray) -> Subspace:
    return Subspace(field, n, tuple(tuple(int(a) for a in row) for row in basis), tuple(pivots))


def enumerate_subspaces(A, budget: EnumerationBudget | None = None) -> Iterator[Subspace]:
    """Every subspace of GF(p)^n once; ``A`` is an algebra or a ``(field, n)`` pair."""
    field, n = (A.field, A.dim) if isinstance(A, LeibnizAlgebra) else A
    p = _prime(field)
    _check_budget(n, p, budget)
    for pivots, bases in _batches(p, n):
        for b in bases:
            yield _to_subspace(field, n, pivots, b)


# -- batched kernels ------------------------------------------------------------------

def _structure_tensor(A: LeibnizAlgebra) -> np.ndarray:
    n = A.dim
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), row in A.table.items():
        C[i, j, :] = [int(a) for a in row]
    return C


def _residual(vecs: np.ndarray, bases: np.ndarray, pivots: tuple, p: int) -> np.ndarray:
    """Reduce vecs (s, m, n) modulo the span of bases (s, k, n) in RREF."""
    r = vecs % p
    for t, c in enumerate(pivots):
        r = (r - r[:, :, c:c + 1] * bases[:, t:t + 1, :]) % p
    return r


def _closed_mask(C, bases, pivots, p) -> np.ndarray:
    s, k, n = bases.shape
    if k == 0:
        return np.ones(s, dtype=bool)
    prods = np.einsum("sai,ijc,sbj->sabc", bases, C, bases, optimize=True).reshape(s, k * k, n)
    return ~_residual(prods, bases, pivots, p).any(axis=(1, 2))


def _ideal_mask(C, bases, pivots, p) -> np.ndarray:
    s, k, n = bases.shape
    if k == 0:
        return np.ones(s, dtype=bool)
    left = np.einsum("ijc,sbj->sbic", C, bases, optimize=True).reshape(s, k * n, n)
    right = np.einsum("jic,sbj->sbic", C, bases, optimize=True).reshape(s, k * n, n)
    prods = np.concatenate([left, right], axis=1)
    return ~_residual(prods, bases, pivots, p).any(axis=(1, 2))


def _batched_rank(M: np.ndarray, p: int) -> np.ndarray:
    """Rank over GF(p) of each matrix in a batch (s, r, c)."""
    M = M % p
    s, r, c = M.shape
    inv_table = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    rank = np.zeros(s, dtype=np.int64)
    used = np.zeros((s, r), dtype=bool)
    for col in range(c):
        cand = (M[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        piv = cand[idx].argmax(axis=1)
        prow = M[idx, piv, :]
        prow = prow * inv_table[prow[:, col]][:, None] % p
        factors = M[idx, :, col]
        M[idx] = (M[idx] - factors[:, :, None] * prow[:, None, :]) % p
        M[idx, piv, :] = prow
        used[idx, piv] = True
        rank[idx] += 1
    return rank


def _self_normalizing_mask(C, bases, pivots, p) -> np.ndarray:
    """For subalgebras T (batched): whether the normalizer of T equals T."""
    s, k, n = bases.shape
    comp = [c for c in range(n) if c not in set(pivots)]
    m = len(comp)
    if m == 0:
        return np.ones(s, dtype=bool)
    if k == 0:
        return np.zeros(s, dtype=bool)  # the normalizer of 0 is everything
    # condition columns: for each complement unit e_c, residues of [e_c, t] and [t, e_c]
    Cl = C[comp]            # (m, n, n): [e_c, e_j]
    Cr = C[:, comp]         # (n, m, n): [e_j, e_c]
    left = np.einsum("ajc,sbj->sabc", Cl, bases, optimize=True)    # [e_comp_a, t_b]
    right = np.einsum("jac,sbj->sabc", Cr, bases, optimize=True)   # [t_b, e_comp_a]
    both = np.concatenate([left, right], axis=2).reshape(s, m, 2 * k * n)
    res = _residual(both.reshape(s, m * 2 * k, n), bases, pivots, p).reshape(s, m, 2 * k * n)
    # normalizer strictly larger iff the m columns are linearly dependent
    return _batched_rank(np.transpose(res, (0, 2, 1)), p) == m


# -- enumerations over an algebra ----------------------------------------------------------

def _algebra_batches(A: LeibnizAlgebra, budget, dims=None):
    p = _prime(A.field)
    _check_budget(A.dim, p, budget)
    C = _structure_tensor(A)
    for pivots, bases in _batches(p, A.dim, dims):
        yield p, C, pivots, bases


def enumerate_subalgebras(A: LeibnizAlgebra, budget: EnumerationBudget | None = None,
                          proper: bool = False) -> list[Subspace]:
    out = []
    for p, C, pivots, bases in _algebra_batches(A, budget):
        if proper and len(pivots) == A.dim:
            continue
        for b in bases[_closed_mask(C, bases, pivots, p)]:
            out.append(_to_subspace(A.field, A.dim, pivots, b))
    return out


def enumerate_ideals(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> list[Subspace]:
    out = []
    for p, C, pivots, bases in _algebra_batches(A, budget):
        for b in bases[_ideal_mask(C, bases, pivots, p)]:
            out.append(_to_subspace(A.field, A.dim, pivots, b))
    return out


def is_nilpotent_by_normalizer(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> bool:
    """Nilpotent iff no proper subalgebra is its own normalizer."""
    for p, C, pivots, bases in _algebra_batches(A, budget, dims=range(A.dim)):
        sub = bases[_closed_mask(C, bases, pivots, p)]
        if len(sub) and _self_normalizing_mask(C, sub, pivots, p).any():
            return False
    return True


@dataclass(frozen=True)
class MinimalityResult:
    status: str                     # "pass" | "fail" | "hypothesis_fail"
    witness: Subspace | None = None
    subspaces: int = 0
    subalgebras: int = 0
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def minimality_check(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> MinimalityResult:
    """Every proper subalgebra nilpotent (for a nonnilpotent solvable A)."""
    p = _prime(A.field)
    _check_budget(A.dim, p, budget)
    total = subspace_count(A.dim, p)
    if is_nilpotent(A):
        return MinimalityResult("hypothesis_fail", None, 0, 0, "algebra is nilpotent")
    if not is_solvable(A):
        return MinimalityResult("hypothesis_fail", None, 0, 0, "algebra is not solvable")
    subs = enumerate_subalgebras(A, budget, proper=True)
    for S in subs:
        if not S.is_zero and not is_nilpotent(A, within=S):
            return MinimalityResult("fail", S, total, len(subs), "nonnilpotent proper subalgebra")
    return MinimalityResult("pass", None, total, len(subs), "all proper subalgebras are nilpotent")


def bruteforce_largest_ideal(A: LeibnizAlgebra, M: Subspace, budget: EnumerationBudget | None = None) -> Subspace:
    _check_space(A, M)
    if not is_subalgebra(A, M):
        raise ValueError("M must be a subalgebra")
    inside = [I for I in enumerate_ideals(A, budget) if I <= M]
    best = max(inside, key=lambda I: I.dim)
    if any(not I <= best for I in inside):
        raise AssertionError("largest ideal inside M is not unique")
    return best


def maximal_subalgebras(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> list[Subspace]:
    subs = enumerate_subalgebras(A, budget, proper=True)
    return [S for S in subs if not any(S < T for T in subs)]


def frattini_subalgebra(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> Subspace:
    maxes = maximal_subalgebras(A, budget)
    return reduce(lambda U, V: U & V, maxes)


def frattini_ideal(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> Subspace:
    """Largest ideal inside the intersection of the maximal subalgebras."""
    phi = frattini_subalgebra(A, budget)
    inside = [I for I in enumerate_ideals(A, budget) if I <= phi]
    return max(inside, key=lambda I: I.dim)


def minimal_ideals(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> list[Subspace]:
    nonzero = [I for I in enumerate_ideals(A, budget) if not I.is_zero]
    return [I for I in nonzero if not any(J < I for J in nonzero)]


def bruteforce_nilradical(A: LeibnizAlgebra, budget: EnumerationBudget | None = None) -> Subspace:
    nil = [I for I in enumerate_ideals(A, budget) if I.is_zero or is_nilpotent(A, within=I)]
    total = reduce(lambda U, V: U + V, nil, zero_subspace(A.field, A.dim))
    if not is_ideal(A, total) or not is_nilpotent(A, within=total):
        raise AssertionError("sum of nilpotent ideals is not a nilpotent ideal")
    return total


def semidirect_check(A: LeibnizAlgebra, N: Subspace, part1: Subspace, part2: Subspace) -> bool:
    """In A/N (parts in quotient coordinates): part1 an ideal, part2 a subalgebra, direct sum."""
    if N.is_zero:
        B = A
    else:
        B = quotient(A, N).algebra
    if not is_ideal(B, part1) or not is_subalgebra(B, part2):
        return False
    return (part1 & part2).is_zero and (part1 + part2).is_full
