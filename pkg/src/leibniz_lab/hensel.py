"""Factor search for monic integer polynomials by Hensel lifting and recombination.

Integer polynomials here are plain int lists, lowest degree first.  A monic
squarefree-mod-q polynomial is factored over GF(q), the factorization is
lifted to Z/q^k with q^k beyond twice the Mignotte coefficient bound, and
products of subsets of the lifted factors are tested by exact division.
"""

from __future__ import annotations

import itertools
import math

from .fields import GF


class SearchBudgetExceeded(Exception):
    pass


def zmul(a: list[int], b: list[int], mod: int | None = None) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ztrim([c % mod for c in out] if mod else out)


def ztrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def zsub(a: list[int], b: list[int], mod: int | None = None) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return ztrim([c % mod for c in out] if mod else out)


def zadd(a: list[int], b: list[int], mod: int | None = None) -> list[int]:
    return zsub(a, [-c for c in b], mod)


def zdivmod_monic(a: list[int], b: list[int], mod: int | None = None):
    """Division by a monic b, exact over Z or modulo ``mod``."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], ztrim(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % mod if mod else a[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    rem = a[:db]
    if mod:
        rem = [c % mod for c in rem]
        quo = [c % mod for c in quo]
    return ztrim(quo), ztrim(rem)


def _to_gf(q: int, a: list[int]):
    from .poly import Polynomial
    return Polynomial(GF(q), tuple(c % q for c in a))


def _from_gf(p) -> list[int]:
    return list(p.coeffs)


def factor_squarefree_gfp(f):
    """Monic irreducible factors of a monic squarefree f over GF(q)."""
    from .poly import _gfp_factor, poly_irreducible
    if f.degree <= 1 or poly_irreducible(f).irreducible:
        return [f.monic()]
    g = _gfp_factor(f)
    return factor_squarefree_gfp(g.monic()) + factor_squarefree_gfp((f // g).monic())


def _bezout(q: int, a, b):
    """s, t over GF(q) with s a + t b = 1 for coprime a, b."""
    from .poly import Polynomial
    F = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.constant(F, 1), Polynomial(F, ())
    t0, t1 = Polynomial(F, ()), Polynomial.constant(F, 1)
    while not r1.is_zero:
        qq, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    inv = Polynomial.constant(F, F.inv(r0.coeffs[0]))
    return s0 * inv, t0 * inv


def _lift_pair(f: list[int], A: list[int], B: list[int], q: int, k: int):
    """Lift f = A B (mod q), A and B monic, to f = A B (mod q^k)."""
    s, t = _bezout(q, _to_gf(q, A), _to_gf(q, B))
    s, t = _from_gf(s), _from_gf(t)
    mod = q
    for _ in range(1, k):
        e = zsub(f, zmul(A, B))
        e = [(c // mod) % q for c in e]
        quo, dB = zdivmod_monic(zmul(e, s, q), B, q)
        dA = zadd(zmul(e, t, q), zmul(quo, A, q), q)
        A = zadd(A, [c * mod for c in dA])
        B = zadd(B, [c * mod for c in dB])
        mod *= q
    return [c % mod for c in A], [c % mod for c in B]


def hensel_lift(f: list[int], factors: list[list[int]], q: int, k: int) -> list[list[int]]:
    if len(factors) == 1:
        return [[c % q ** k for c in f]]
    half = len(factors) // 2
    A = [1]
    for g in factors[:half]:
        A = zmul(A, g, q)
    B = [1]
    for g in factors[half:]:
        B = zmul(B, g, q)
    A, B = _lift_pair(f, A, B, q, k)
    return hensel_lift(A, factors[:half], q, k) + hensel_lift(B, factors[half:], q, k)


def _symmetric(c: int, mod: int) -> int:
    c %= mod
    return c - mod if c > mod // 2 else c


def find_monic_factor(m: list[int], q: int, degrees: set[int], budget: int) -> list[int] | None:
    """A proper monic integer factor of monic m with degree in ``degrees``, or None.

    m must be squarefree modulo q.  Raises :class:`SearchBudgetExceeded` when
    more than ``budget`` factor subsets would have to be tried.
    """
    n = len(m) - 1
    norm = math.isqrt(sum(c * c for c in m)) + 1
    bound = max(math.comb(d, j) for d in range(n) for j in range(d + 1)) * norm
    k = 1
    while q ** k <= 2 * bound:
        k += 1
    mod = q ** k
    mod_factors = [_from_gf(g) for g in factor_squarefree_gfp(_to_gf(q, m).monic())]
    lifted = hensel_lift(m, mod_factors, q, k)
    r = len(lifted)
    tried = 0
    for size in range(1, r // 2 + 1):
        for subset in itertools.combinations(range(r), size):
            d = sum(len(lifted[i]) - 1 for i in subset)
            if d not in degrees and n - d not in degrees:
                continue
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded
            g = [1]
            for i in subset:
                g = zmul(g, lifted[i], mod)
            g = [_symmetric(c, mod) for c in g]
            if any(abs(c) > math.comb(d, j) * norm for j, c in enumerate(g)):
                continue
            _, rem = zdivmod_monic(m, g)
            if not rem:
                return g
    return None
