"""Dense univariate polynomials over an exact field, with irreducibility testing.

Coefficient tuples are stored lowest degree first and trimmed, so the zero
polynomial is the empty tuple.

Irreducibility is exact over GF(p) (Rabin's test, with a factor extracted by
distinct/equal degree splitting when reducible).  Over Q and Q(i) the answer
comes from a repeated-factor check, root search (degree <= 3), reduction
modulo small primes, and, up to degree 8, a search for integral factors
within the Mignotte bound (lifted from a modular factorization; Q(i) goes
through the norm to Q).  When none of these settle it the result is
``inconclusive``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import (GF, Field, FieldError, GaussianRational, GaussianRationals,
                     QQ, PrimeField, Rationals, is_prime)
from .hensel import SearchBudgetExceeded, find_monic_factor
from .linalg import Matrix, char_poly_coeffs


def _trim(field: Field, coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and field.is_zero(c[-1]):
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    field: Field
    coeffs: tuple  # lowest degree first

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.field, tuple(self.field.coerce(a) for a in self.coeffs)))

    @classmethod
    def monomial(cls, field: Field, deg: int, c=None) -> "Polynomial":
        c = field.one if c is None else c
        return cls(field, (field.zero,) * deg + (c,))

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls.monomial(field, 1)

    @classmethod
    def constant(cls, field: Field, c) -> "Polynomial":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _check(self, other: "Polynomial"):
        if other.field != self.field:
            raise FieldError(f"polynomials over {self.field} and {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(f, tuple(f.add(self[i], other[i]) for i in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(self.field.neg(a) for a in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        f = self.field
        if not isinstance(other, Polynomial):
            c = f.coerce(other)
            return Polynomial(f, tuple(f.mul(c, a) for a in self.coeffs))
        self._check(other)
        if self.is_zero or other.is_zero:
            return Polynomial(f, ())
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if not f.is_zero(b):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = f.inv(other.lead)
        q = [f.zero] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if f.is_zero(c):
                continue
            c = f.mul(c, inv_lead)
            q[i - d] = c
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = f.sub(rem[i - d + j], f.mul(c, b))
        return Polynomial(f, tuple(q)), Polynomial(f, tuple(rem[:d]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self * self.field.inv(self.lead)

    def derivative(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, tuple(f.mul(f.coerce(i), a) for i, a in enumerate(self.coeffs) if i > 0))

    def __call__(self, x):
        f = self.field
        acc = f.zero
        for a in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), a)
        return acc

    def eval_matrix(self, T: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        n = T.rows
        acc = Matrix.zeros(T.field, n, n)
        ident = Matrix.identity(T.field, n)
        for a in reversed(self.coeffs):
            acc = acc @ T + ident.scale(a)
        return acc

    def __str__(self):
        return format_poly(self)

    def format_coeffs(self) -> list[str]:
        return [self.field.format(a) for a in self.coeffs]


def format_poly(p: Polynomial, var: str = "λ") -> str:
    f = p.field
    if p.is_zero:
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        a = p.coeffs[i]
        if f.is_zero(a):
            continue
        s = f.format(a)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon:
            if s == "1":
                s = mon
            elif s == "-1":
                s = "-" + mon
            elif any(ch in s[1:] for ch in "+-"):
                s = f"({s}){mon}"
            else:
                s = s + mon
        terms.append(s)
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial.constant(base.field, base.field.one) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def char_poly(T: Matrix) -> Polynomial:
    """Monic characteristic polynomial det(λI - T)."""
    return Polynomial(T.field, tuple(char_poly_coeffs(T)))


def from_recurrence(field: Field, coeffs: Sequence) -> Polynomial:
    """λ^{k+1} - c_k λ^k - ... - c_1 λ - c_0 for coefficients c_0..c_k."""
    cs = [field.neg(field.coerce(c)) for c in coeffs]
    return Polynomial(field, tuple(cs) + (field.one,))


# --------------------------------------------------------------------------
# irreducibility

@dataclass(frozen=True)
class Irreducibility:
    status: str                        # "irreducible" | "reducible" | "inconclusive"
    factor: Polynomial | None = None   # verified proper factor when reducible
    reason: str = ""

    @property
    def irreducible(self) -> bool:
        return self.status == "irreducible"

    @property
    def reducible(self) -> bool:
        return self.status == "reducible"


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _divides(f: Polynomial, g: Polynomial) -> bool:
    return (f % g).is_zero


def _verified(f: Polynomial, g: Polynomial, reason: str) -> Irreducibility:
    if not (1 <= g.degree < f.degree) or not _divides(f, g):
        raise AssertionError(f"bad factor witness {g} for {f}")
    return Irreducibility("reducible", g.monic(), reason)


def poly_irreducible(p: Polynomial) -> Irreducibility:
    if p.is_zero or p.degree < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    if p.degree == 1:
        return Irreducibility("irreducible", None, "linear")
    if isinstance(p.field, PrimeField):
        return _irreducible_gfp(p)
    if isinstance(p.field, (Rationals, GaussianRationals)):
        g = poly_gcd(p, p.derivative())
        if g.degree >= 1:
            return _verified(p, g, "repeated factor")
    if isinstance(p.field, Rationals):
        return _irreducible_q(p)
    if isinstance(p.field, GaussianRationals):
        return _irreducible_qi(p)
    raise FieldError(f"unsupported field {p.field}")


# -- GF(p) ------------------------------------------------------------------

def _frobenius_pow(x: Polynomial, q: int, times: int, mod: Polynomial) -> Polynomial:
    r = x
    for _ in range(times):
        r = powmod(r, q, mod)
    return r


def _irreducible_gfp(f: Polynomial) -> Irreducibility:
    F = f.field
    q = F.p
    f = f.monic()
    n = f.degree
    x = Polynomial.x(F)
    # Rabin: x^{q^n} = x mod f and gcd(x^{q^{n/r}} - x, f) = 1 for primes r | n
    ok = (_frobenius_pow(x, q, n, f) - x) % f
    if ok.is_zero and all(
        poly_gcd(_frobenius_pow(x, q, n // r, f) - x, f).degree == 0 for r in _prime_factors(n)
    ):
        return Irreducibility("irreducible", None, "Rabin test")
    return _verified(f, _gfp_factor(f), "factor found over GF(p)")


def _gfp_factor(f: Polynomial) -> Polynomial:
    """A proper monic factor of a reducible monic f over GF(p)."""
    F = f.field
    q = F.p
    d = f.derivative()
    if d.is_zero:
        # f(x) = g(x^q) = g(x)^q over GF(q)
        return Polynomial(F, f.coeffs[::q])
    g = poly_gcd(f, d)
    if g.degree >= 1:
        return g
    x = Polynomial.x(F)
    h = x
    for deg in range(1, f.degree // 2 + 1):
        h = powmod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree >= 1:
            if g.degree < f.degree:
                return g
            return _equal_degree_split(f, deg)
    raise AssertionError("no factor found for a reducible polynomial")


def _equal_degree_split(f: Polynomial, d: int) -> Polynomial:
    """Cantor-Zassenhaus splitting of a squarefree product of degree-d factors."""
    F = f.field
    q = F.p
    rng = random.Random(0)
    n = f.degree
    while True:
        a = Polynomial(F, tuple(rng.randrange(q) for _ in range(n)))
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 1 <= g.degree < n:
            return g
        if q == 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = powmod(a, (q ** d - 1) // 2, f) - Polynomial.constant(F, 1)
        g = poly_gcd(b, f)
        if 1 <= g.degree < n:
            return g


# -- Q ------------------------------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _integer_coeffs(p: Polynomial) -> list[int]:
    """Primitive integer polynomial proportional to p (rational case)."""
    den = 1
    for a in p.coeffs:
        den = _lcm(den, a.denominator)
    ints = [int(a * den) for a in p.coeffs]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _first_primes(count: int, accept) -> list[int]:
    out, q = [], 2
    while len(out) < count:
        if is_prime(q) and accept(q):
            out.append(q)
        q += 1
    return out


def _degree_patterns(f_mod: Polynomial) -> list[int]:
    """Degrees of the irreducible factors of a squarefree monic f over GF(q)."""
    F = f_mod.field
    q = F.p
    x = Polynomial.x(F)
    degs = []
    rest = f_mod
    h = x
    deg = 0
    while rest.degree >= 1:
        deg += 1
        if 2 * deg > rest.degree:
            degs.append(rest.degree)
            break
        h = powmod(h, q, f_mod)
        g = poly_gcd(h - x, rest)
        if g.degree >= 1:
            degs.extend([deg] * (g.degree // deg))
            rest = rest // g
    return degs


def _subset_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


FACTOR_SEARCH_DEGREE = 8
FACTOR_SEARCH_BUDGET = 300_000
MODULAR_PRIMES = 25


def _irreducible_q(p: Polynomial, max_degree: int = FACTOR_SEARCH_DEGREE) -> Irreducibility:
    ints = _integer_coeffs(p)
    n = len(ints) - 1
    if ints[0] == 0:
        return _verified(p, Polynomial.x(p.field), "zero constant term")
    if n <= 3:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for r in (Fraction(num, den), Fraction(-num, den)):
                    if p(r) == 0:
                        return _verified(p, Polynomial(p.field, (-r, 1)), "rational root")
        return Irreducibility("irreducible", None, "no rational root (degree <= 3)")
    return _integral_search(p, ints, _reductions_q(ints),
                            lambda allowed, q: _search_monic_factor(p, ints, allowed, q), max_degree)


def _reductions_q(ints: list[int]):
    primes = _first_primes(MODULAR_PRIMES, lambda q: ints[-1] % q != 0)
    for q in primes:
        yield q, Polynomial(GF(q), tuple(ints))


def _monic_transform(ints):
    """Coefficients of lc^{n-1} f(λ/lc): monic with integral coefficients."""
    n = len(ints) - 1
    lc = ints[-1]
    return [ints[i] * lc ** (n - 1 - i) if i < n else 1 for i in range(n + 1)]


def _integral_search(p: Polynomial, ints, reductions, search, max_degree: int = FACTOR_SEARCH_DEGREE) -> Irreducibility:
    """Modular certificates first, then ``search(allowed_degrees, q)`` for a factor."""
    n = len(ints) - 1
    allowed = set(range(1, n // 2 + 1))
    best = None
    for q, fq in reductions:
        if fq.degree != n:
            continue
        fq = fq.monic()
        if poly_gcd(fq, fq.derivative()).degree != 0:
            continue
        degs = _degree_patterns(fq)
        if len(degs) == 1:
            return Irreducibility("irreducible", None, f"irreducible modulo {q}")
        allowed &= {d for d in _subset_sums(degs) if 1 <= d <= n // 2}
        if not allowed:
            return Irreducibility("irreducible", None, "no factor degree compatible with reductions")
        if isinstance(q, int) and (best is None or len(degs) < best[1]):
            best = (q, len(degs))
    if n > max_degree:
        return Irreducibility("inconclusive", None, f"degree {n} exceeds factor-search limit")
    return search(allowed, best[0] if best else None)


def _search_monic_factor(p: Polynomial, ints, degrees, q: int) -> Irreducibility:
    """Monic integral factor of lc^{n-1} f(λ/lc), lifted from GF(q) and bounded by Mignotte."""
    F = p.field
    if q is None:
        return Irreducibility("inconclusive", None, "no squarefree reduction for the factor search")
    m = _monic_transform(ints)
    lc = ints[-1]
    try:
        g = find_monic_factor(m, q, set(degrees), FACTOR_SEARCH_BUDGET)
    except SearchBudgetExceeded:
        return Irreducibility("inconclusive", None, "factor recombination exceeds budget")
    if g is None:
        return Irreducibility("irreducible", None, f"no integral factor (lifted from GF({q}))")
    # undo the monic transform: g(lc λ) is a factor of f
    back = Polynomial(F, tuple(F.coerce(c * lc ** i) for i, c in enumerate(g)))
    return _verified(p, back.monic(), f"integral factor of degree {len(g) - 1}")


def _abs2(c):
    if isinstance(c, GaussianRational):
        return c.norm()
    return c * c


# -- Q(i) -----------------------------------------------------------------------

def _gaussian_integer_coeffs(p: Polynomial) -> list[GaussianRational]:
    den = 1
    for a in p.coeffs:
        den = _lcm(den, _lcm(a.re.denominator, a.im.denominator))
    out = [a * den for a in p.coeffs]
    g = 0
    for a in out:
        g = math.gcd(g, int(a.re), int(a.im))
    return [GaussianRational(a.re / g, a.im / g) for a in out]


def _gaussian_divides(a: GaussianRational, b: GaussianRational) -> bool:
    if not a:
        return not b
    q = b / a
    return q.re.denominator == 1 and q.im.denominator == 1


def _gaussian_divisors(z: GaussianRational) -> list[GaussianRational]:
    """All Gaussian integers dividing z (z nonzero)."""
    nz = int(z.norm())
    out = []
    for m in _divisors(nz):
        r = math.isqrt(m)
        for a in range(-r, r + 1):
            b2 = m - a * a
            b = math.isqrt(b2)
            if b * b != b2:
                continue
            for bb in {b, -b}:
                g = GaussianRational(a, bb)
                if _gaussian_divides(g, z):
                    out.append(g)
    return out


def _sqrt_minus_one(q: int) -> int:
    for a in range(2, q):
        r = pow(a, (q - 1) // 4, q)
        if r * r % q == q - 1:
            return r
    raise ValueError(f"no square root of -1 modulo {q}")


def _irreducible_qi(p: Polynomial) -> Irreducibility:
    F = p.field
    ints = _gaussian_integer_coeffs(p)
    n = len(ints) - 1
    if not ints[0]:
        return _verified(p, Polynomial.x(F), "zero constant term")
    if n <= 3:
        for num in _gaussian_divisors(ints[0]):
            for den in _gaussian_divisors(ints[-1]):
                r = num / den
                if p(r) == 0:
                    return _verified(p, Polynomial(F, (-r, 1)), "Gaussian rational root")
        return Irreducibility("irreducible", None, "no root in Q(i) (degree <= 3)")
    return _integral_search(p, ints, _reductions_qi(ints), lambda allowed, q: _norm_factor_search(p))


NORM_SHIFTS = 8


def _shift(p: Polynomial, a) -> Polynomial:
    """p(λ + a)."""
    F = p.field
    lin = Polynomial(F, (F.coerce(a), F.one))
    out = Polynomial(F, ())
    for c in reversed(p.coeffs):
        out = out * lin + Polynomial.constant(F, c)
    return out


def _norm_factor_search(p: Polynomial) -> Irreducibility:
    """Factor over Q(i) through the norm g * conj(g) in Q[λ], with g = p(λ - s i).

    When the norm is squarefree its factors over Q correspond to the factors
    of g over Q(i) (recovered by a gcd).
    """
    F = p.field
    for s in range(NORM_SHIFTS):
        g = _shift(p, GaussianRational(0, -s))
        gbar = Polynomial(F, tuple(c.conjugate() for c in g.coeffs))
        norm = g * gbar
        nq = Polynomial(QQ, tuple(c.re for c in norm.coeffs))
        if poly_gcd(nq, nq.derivative()).degree != 0:
            continue
        res = _irreducible_q(nq, max_degree=2 * FACTOR_SEARCH_DEGREE)
        if res.status != "reducible":
            return Irreducibility(res.status, None, f"norm over Q: {res.reason}")
        h = poly_gcd(g, Polynomial(F, tuple(F.coerce(c) for c in res.factor.coeffs)))
        return _verified(p, _shift(h, GaussianRational(0, s)), "factor of the norm over Q")
    return Irreducibility("inconclusive", None, "no squarefree norm among the tried shifts")


def _reductions_qi(ints):
    # primes q = 1 mod 4 split in Z[i]; reduce along i -> sqrt(-1) mod q
    lc_norm = int(ints[-1].norm())
    primes = _first_primes(MODULAR_PRIMES, lambda q: q % 4 == 1 and lc_norm % q != 0)
    for q in primes:
        s = _sqrt_minus_one(q)
        yield q, Polynomial(GF(q), tuple((int(c.re) + int(c.im) * s) % q for c in ints))


def polynomial_from_strings(field: Field, items: Iterable[str]) -> Polynomial:
    return Polynomial(field, tuple(field.parse(s) for s in items))
