"""Exact scalar arithmetic: rationals and Gaussian rationals.

Rationals are plain ``fractions.Fraction``.  Gaussian rationals (a + b*i
with rational a, b) carry the amplitudes of torus waves, which pick up
factors of i*k under differentiation.  No floating point enters here.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DocumentError

QQ = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text) -> Fraction:
    """Parse "num/den" or "num" strings (also accepts ints) into a Fraction."""
    if isinstance(text, bool):
        raise DocumentError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise DocumentError(f"not a rational: {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {text!r}: {exc}") from None
    return value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """a + b*i with exact rational a, b.  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring/field operations -------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if self.im == 0:
            return format_rational(self.re)
        return f"({format_rational(self.re)}+{format_rational(self.im)}i)"


I_UNIT = GaussianRational(0, 1)


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    raise TypeError(f"cannot coerce {value!r} to GaussianRational")


def scalar_is_zero(s) -> bool:
    return not s


def scalar_inverse(s):
    """Multiplicative inverse for Fraction or GaussianRational."""
    if isinstance(s, GaussianRational):
        return s.inverse()
    return ONE / s
