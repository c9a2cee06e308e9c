"""Exact Gaussian-rational scalars and their string form.

Real exact values are plain :class:`fractions.Fraction` objects.  Values with a
nonzero imaginary part are :class:`GaussianRational`.  Every arithmetic result
is passed through :func:`gauss` so a number whose imaginary part cancels drops
back to a ``Fraction``; this keeps real pipelines on the fast path.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "gauss",
    "to_exact",
    "to_complex",
    "conj",
    "format_scalar",
    "parse_scalar",
    "I",
    "is_exact",
]


class GaussianRational:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        re, im = _parts(other)
        return gauss(self.re + re, self.im + im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        re, im = _parts(other)
        return gauss(self.re - re, self.im - im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        re, im = _parts(other)
        return gauss(re - self.re, im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        re, im = _parts(other)
        return gauss(self.re * re - self.im * im, self.re * im + self.im * re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        re, im = _parts(other)
        d = re * re + im * im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return gauss((self.re * re + self.im * im) / d, (self.im * re - self.re * im) / d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(*_parts(other)) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return gauss(self.re, -self.im)

    # comparison / conversion -------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        re, im = _parts(other)
        return self.re == re and self.im == im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, (GaussianRational, Fraction)):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return NotImplemented


def _parts(x):
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return x, 0


def gauss(re, im=0):
    """Return ``re + i*im`` as a Fraction when the imaginary part vanishes."""
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def to_exact(x):
    """Convert int/Fraction/GaussianRational/str to a canonical exact scalar."""
    if isinstance(x, GaussianRational):
        return gauss(x.re, x.im)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def to_complex(x) -> complex:
    return complex(x)


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


_NUM = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_NUM})\s*(?:(?P<sign>[+-])\s*(?P<im1>\d+(?:/\d+)?)?\s*\*?\s*i)?"
    rf"|(?P<im2>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*i)\s*$"
)


def parse_scalar(text: str):
    """Parse ``"p/q"``, ``"p/q+r/s i"``, ``"r/s i"`` or ``"-i"`` exactly."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    if m.group("re") is not None:
        re_part = Fraction(m.group("re"))
        if m.group("sign") is None:
            return re_part
        im_part = Fraction(m.group("im1") or 1)
        if m.group("sign") == "-":
            im_part = -im_part
        return gauss(re_part, im_part)
    im_text = m.group("im2")
    if im_text in ("", "+"):
        return gauss(0, 1)
    if im_text == "-":
        return gauss(0, -1)
    return gauss(0, Fraction(im_text))


def format_scalar(x) -> str:
    """Canonical string: ``"3/4"``, ``"-1/2i"``, ``"1/3+2i"``."""
    x = to_exact(x)
    if isinstance(x, Fraction):
        return str(x)
    if x.re == 0:
        return f"{x.im}i"
    sign = "-" if x.im < 0 else "+"
    return f"{x.re}{sign}{abs(x.im)}i"
