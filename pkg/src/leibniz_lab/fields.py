"""Exact scalar fields: the rationals, the Gaussian rationals and prime fields.

Field objects carry the arithmetic; raw values are plain Python objects
(``Fraction`` for Q, :class:`GaussianRational` for Q(i), ``int`` in
``range(p)`` for GF(p)).  Linear algebra elsewhere in the package only ever
talks to a field through the methods defined here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any


class FieldError(ValueError):
    """Raised on malformed scalars or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GaussianRational:
    """Immutable a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (GaussianRational(1) / self) ** -e
        result, base = GaussianRational(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return _fmt_fraction(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = _fmt_fraction(z.im) + "i"
    if z.re == 0:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{_fmt_fraction(z.re)}{sign}{im}"


_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^{_RATIONAL}$")
# a/b+c/di, a/b-c/di, c/di, a/b, i, -i, 2i, +i ...
_GAUSS_RE = re.compile(
    rf"^(?:(?P<re>{_RATIONAL})(?=$|[+-]))?(?P<im>[+-]?(?:\d+(?:/\d+)?)?i)?$"
)


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise FieldError(f"not a rational number: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise FieldError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


class Field:
    """Base class for exact fields; subclasses are frozen dataclasses."""

    kind: str
    characteristic: int

    # raw-value arithmetic -------------------------------------------------
    zero: Any
    one: Any

    def __call__(self, x: Any) -> Any:
        return self.coerce(x)

    def coerce(self, x: Any) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self.one / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def parse(self, text: str) -> Any:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    def elements(self):
        raise FieldError(f"{self} is infinite")


@dataclass(frozen=True)
class Rationals(Field):
    kind: str = "Rationals"
    characteristic: int = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise FieldError("bool is not a scalar")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, GaussianRational) and x.im == 0:
            return x.re
        raise FieldError(f"cannot interpret {x!r} in Q")

    def parse(self, text):
        return _parse_rational(text.strip())

    def format(self, a):
        return _fmt_fraction(a)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class GaussianRationals(Field):
    kind: str = "GaussianRationals"
    characteristic: int = 0

    zero = GaussianRational(0, 0)
    one = GaussianRational(1, 0)

    def coerce(self, x):
        if isinstance(x, bool):
            raise FieldError("bool is not a scalar")
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        if isinstance(x, complex):
            raise FieldError("floating complex numbers are not exact")
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot interpret {x!r} in Q(i)")

    def parse(self, text):
        s = text.strip().replace(" ", "")
        m = _GAUSS_RE.match(s)
        if not s or not m or (m.group("re") is None and m.group("im") is None):
            raise FieldError(f"not a Gaussian rational: {text!r}")
        re_part = _parse_rational(m.group("re")) if m.group("re") else Fraction(0)
        im_txt = m.group("im")
        if im_txt is None:
            im_part = Fraction(0)
        else:
            body = im_txt[:-1]
            if body in ("", "+"):
                im_part = Fraction(1)
            elif body == "-":
                im_part = Fraction(-1)
            else:
                im_part = _parse_rational(body)
        return GaussianRational(re_part, im_part)

    def format(self, a):
        return format_gaussian(a)

    def __str__(self):
        return "Q(i)"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int = 2
    kind: str = "PrimeField"

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"GF(p) needs a prime p, got {self.p}")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def zero(self):  # type: ignore[override]
        return 0

    @property
    def one(self):  # type: ignore[override]
        return 1

    def coerce(self, x):
        if isinstance(x, bool):
            raise FieldError("bool is not a scalar")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise FieldError(f"cannot interpret {x!r} in GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def parse(self, text):
        s = text.strip()
        if not re.fullmatch(r"[+-]?\d+", s):
            raise FieldError(f"not a residue mod {self.p}: {text!r}")
        return int(s) % self.p

    def format(self, a):
        return str(a)

    def elements(self):
        return range(self.p)

    def __str__(self):
        return f"GF({self.p})"


QQ = Rationals()
QQI = GaussianRationals()
I = GaussianRational(0, 1)


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: Any) -> Field:
    """Field from its file-format descriptor: ``"Q"``, ``"Q(i)"`` or ``{"GF": p}``."""
    if isinstance(spec, Field):
        return spec
    if spec == "Q":
        return QQ
    if spec == "Q(i)":
        return QQI
    if isinstance(spec, dict) and set(spec) == {"GF"} and isinstance(spec["GF"], int):
        return GF(spec["GF"])
    if isinstance(spec, str):
        m = re.fullmatch(r"GF\((\d+)\)|GF(\d+)", spec.strip())
        if m:
            return GF(int(m.group(1) or m.group(2)))
    raise FieldError(f"unknown field descriptor {spec!r}")


def field_to_spec(field: Field) -> Any:
    if isinstance(field, PrimeField):
        return {"GF": field.p}
    return str(field)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: Field
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    @classmethod
    def parse(cls, field: Field, text: str) -> "Scalar":
        return cls(field, field.parse(text))

    def _other(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __str__(self):
        return self.field.format(self.value)
