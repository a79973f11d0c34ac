"""Exact Gaussian rationals, the ground field for everything in the package.

Two representations coexist:

* :class:`Scalar` is the public value type (real and imaginary parts are
  ``gmpy2.mpq``, so always reduced with a positive denominator).
* "raw" values are what matrices and subspaces store internally: a plain
  ``mpq`` when the number is real, a :class:`Scalar` only when the imaginary
  part is nonzero.  Almost every structure constant in practice is real, and
  the elimination loops run several times faster on bare ``mpq``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import ParseError

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Scalar):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    if isinstance(x, str):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar) and not im:
            self.re, self.im = re.re, re.im
            return
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "Scalar":
        s = cls.__new__(cls)
        s.re = re
        s.im = im
        return s

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar._make(a * c, _ZERO)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            return Scalar._make(1 / a, _ZERO)
        n = a * a + b * b
        return Scalar._make(a / n, -b / n)

    def __neg__(self):
        return Scalar._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar('{self}')"

    def __str__(self):
        return format_scalar(self)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)) or type(x) is type(_ZERO):
        return Scalar._make(_q(x), _ZERO)
    if isinstance(x, str):
        return parse_scalar(x)
    return None


# raw <-> Scalar ------------------------------------------------------------

def to_raw(x):
    """Convert anything scalar-like to the internal representation."""
    if type(x) is type(_ZERO):
        return x
    if isinstance(x, Scalar):
        return x if x.im else x.re
    if isinstance(x, str):
        return to_raw(parse_scalar(x))
    if isinstance(x, complex):
        raise TypeError("floating-point complex numbers are not exact")
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return _q(x)


def demote(x):
    """Turn a Scalar with zero imaginary part back into a bare mpq."""
    if type(x) is Scalar and not x.im:
        return x.re
    return x


def to_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar._make(_q(x), _ZERO)


def conj_raw(x):
    if type(x) is Scalar:
        return Scalar._make(x.re, -x.im)
    return x


def is_real_raw(x) -> bool:
    return type(x) is not Scalar


# text syntax ---------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?"
    rf"(?:(?P<sign>[+-])?(?:(?P<im>{_RAT})\*)?i)?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``a/b``, ``a/b+c/d*i``, ``i``, ``-3*i`` and similar forms.

    Whitespace is ignored.  Raises :class:`ParseError` naming the token.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a scalar string, got {text!r}", token=repr(text))
    compact = "".join(text.split())
    m = _SCALAR_RE.match(compact)
    if not compact or m is None:
        raise ParseError(f"malformed scalar {text!r}", token=text)
    re_part, sign, im_part = m.group("re", "sign", "im")
    has_i = compact.endswith("i")
    if has_i and re_part is not None and sign is None:
        # "2i" or "1/2i" without the '*'; also rejects "3i" ambiguity
        raise ParseError(f"malformed scalar {text!r}", token=text)
    try:
        real = mpq(re_part) if re_part else _ZERO
        imag = _ZERO
        if has_i:
            imag = mpq(im_part) if im_part else _ONE
            if sign == "-":
                imag = -imag
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", token=text) from None
    return Scalar._make(real, imag)


def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    s = to_scalar(x) if not isinstance(x, Scalar) else x
    a, b = s.re, s.im
    if not b:
        return _fmt_q(a)
    if b == 1:
        imag = "i"
    elif b == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_q(b)}*i"
    if not a:
        return imag
    if imag.startswith("-"):
        return f"{_fmt_q(a)}{imag}"
    return f"{_fmt_q(a)}+{imag}"


I = Scalar._make(_ZERO, _ONE)
