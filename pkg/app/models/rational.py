"""
rational.py

Exact value types for the reference track. Everything here is `fractions.Fraction` based: no rounding anywhere.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from pydantic import BaseModel, ConfigDict

from app.core.utils.custom_fields import RationalField, parse_rational
from app.core.utils.errors import InputParseError

Scalar = Union[int, Fraction]


@dataclass(frozen=True, slots=True, eq=False)
class ComplexRational:
    """ re + i·im with exact rational parts """
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: "ComplexRational | Scalar | str") -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "ComplexRational":
        """ Parse ``re[,im]`` where each part is an exact rational string, e.g. ``2/3,1/4`` """
        parts = text.split(",")
        if len(parts) > 2:
            position = len(parts[0]) + len(parts[1]) + 1
            raise InputParseError(f"unexpected ',' at position {position}", text=text, position=position)
        re = parse_rational(parts[0], offset=0)
        im = parse_rational(parts[1], offset=len(parts[0]) + 1) if len(parts) == 2 else Fraction(0)
        return cls(re, im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def to_mpc(self, ctx):
        return ctx.mpc(ctx.mpf(self.re.numerator) / self.re.denominator,
                       ctx.mpf(self.im.numerator) / self.im.denominator)

    def __add__(self, other):
        other = _maybe_coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe_coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe_coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _maybe_coerce(other)
        if other is None:
            return NotImplemented
        # schoolbook product, exact
        return ComplexRational(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __eq__(self, other):
        other = _maybe_coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"


def _maybe_coerce(value) -> ComplexRational | None:
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ComplexRational(Fraction(value))
    return None


@dataclass(frozen=True, slots=True)
class RationalPolynomial:
    """ Dense polynomial with exact coefficients; index = power of z. The zero polynomial is ``(0,)``. """
    coefficients: tuple[Fraction, ...] = field(default=(Fraction(0),))

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients] or [Fraction(0)]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_iterable(cls, coefficients: Iterable[Scalar]) -> "RationalPolynomial":
        return cls(tuple(Fraction(c) for c in coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0

    def __call__(self, x):
        """ Horner evaluation; `x` may be an int, a Fraction or a ComplexRational """
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (size - len(other.coefficients))
        return RationalPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "RationalPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    def scale(self, factor: Scalar) -> "RationalPolynomial":
        return RationalPolynomial(tuple(c * factor for c in self.coefficients))

    def shift(self, delta: Scalar) -> "RationalPolynomial":
        """ p(z + delta), by Horner over polynomials """
        linear = RationalPolynomial((Fraction(delta), Fraction(1)))
        acc = RationalPolynomial((self.coefficients[-1],))
        for c in reversed(self.coefficients[:-1]):
            acc = acc * linear + RationalPolynomial((c,))
        return acc

    def __str__(self):
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0 and self.degree > 0:
                continue
            terms.append(str(c) if power == 0 else f"({c})z" if power == 1 else f"({c})z^{power}")
        return " + ".join(terms)


@dataclass(frozen=True, slots=True)
class RationalSeries:
    """ Truncated series in t with exact coefficients; `order` is exclusive and equals the length """
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a series needs at least one coefficient")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coefficients[:order])

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return RationalSeries(tuple(sum((a[j] * b[k - j] for j in range(k + 1)), Fraction(0))
                                    for k in range(order)))

    def __truediv__(self, other: "RationalSeries") -> "RationalSeries":
        if other[0] == 0:
            raise ZeroDivisionError("series division by a series with zero constant term")
        order = min(self.order, other.order)
        q: list[Fraction] = []
        for k in range(order):
            acc = self.coefficients[k] - sum((other[j] * q[k - j] for j in range(1, k + 1)), Fraction(0))
            q.append(acc / other[0])
        return RationalSeries(tuple(q))

    def __pow__(self, exponent: int) -> "RationalSeries":
        """ Binary exponentiation; every product is truncated at this series' order """
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = RationalSeries((Fraction(1),) + (Fraction(0),) * (self.order - 1))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result


class InterlacingReport(BaseModel):
    """ Exact values of B_n^(n)(x) at x = 0..n and their sign pattern """
    model_config = ConfigDict(frozen=True)

    n: int
    values: list[RationalField]
    signs: list[int]
    passed: bool
    failing_pairs: list[tuple[int, int]] = []


def to_bigcomplex(value, ctx):
    """ Lift an exact or machine number (or an ``re[,im]`` string) into the mpmath context `ctx` """
    if isinstance(value, str):
        value = ComplexRational.parse(value)
    if isinstance(value, ComplexRational):
        return value.to_mpc(ctx)
    if isinstance(value, Fraction):
        return ctx.mpc(ctx.mpf(value.numerator) / value.denominator)
    return ctx.mpc(value)
