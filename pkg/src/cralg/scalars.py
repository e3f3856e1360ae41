"""Exact scalars: rationals (gmpy2 ``mpq``) and Gaussian rationals ``a + b*i``."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def to_q(x) -> mpq:
    """Coerce an exact rational-like value to ``mpq``; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, (int, Rational)) or type(x) is type(ZERO):
        return mpq(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """``re + im*i`` with exact rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(ZERO) else to_q(re)
        self.im = im if type(im) is type(ZERO) else to_q(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not accepted")
        return cls(to_q(x), ZERO)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            q = to_q(other)
            return GaussianRational(self.re * q, self.im * q)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({_qstr(self.re)}, {_qstr(self.im)})"

    def __str__(self):
        return render_gaussian(self)


I = GaussianRational(0, 1)
G_ZERO = GaussianRational(0, 0)
G_ONE = GaussianRational(1, 0)


def _qstr(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_gaussian(c: GaussianRational) -> str:
    """Canonical text: ``3/2``, ``-i``, ``2*i``, ``(1+2*i)``."""
    re, im = c.re, c.im
    if not im:
        return _qstr(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{_qstr(im)}*i"
    if not re:
        return ims
    sign = "" if ims.startswith("-") else "+"
    return f"({_qstr(re)}{sign}{ims})"


def gauss(x) -> GaussianRational:
    return GaussianRational.coerce(x)
