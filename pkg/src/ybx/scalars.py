"""Exact scalars: complex numbers with rational real and imaginary parts.

Everything in this package computes over Q(i).  Keeping scalars exact makes
"equals zero" decidable, which the block-structure arguments require; there
is deliberately no floating-point mode.  Both parts live in canonical lowest
terms (fractions.Fraction), so equality is structural.  Values are immutable
and safe to share between threads.

Text grammar (whitespace-insensitive)::

    rational := ['-'] digits ['/' digits]
    gaussian := rational
              | rational ('+'|'-') rational 'i'
              | rational 'i'

so ``3``, ``-1/2``, ``2/3+1/5i`` and ``-1i`` are all valid; ``-i`` must be
written ``-1i``.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

_RATIONAL = r"-?\d+(?:/\d+)?"
_UNSIGNED = r"\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    rf"^(?:(?P<both_re>{_RATIONAL})(?P<sign>[+-])(?P<both_im>{_UNSIGNED})i"
    rf"|(?P<im_only>{_RATIONAL})i"
    rf"|(?P<re_only>{_RATIONAL}))$"
)


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element of Q(i): ``re + im*i`` with both parts exact rationals."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def reciprocal(self) -> "GaussianRational":
        return ONE / self

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Lexicographic (re, im) key; used only for canonical orderings."""
        return (self.re, self.im)

    def sqrt(self):
        """An exact square root in Q(i), or None when none exists there."""
        if not self:
            return ZERO
        if not self.im:
            r = _sqrt_fraction(self.re)
            if r is not None:
                return GaussianRational(r, 0)
            r = _sqrt_fraction(-self.re)
            if r is not None:
                return GaussianRational(0, r)
            return None
        n = _sqrt_fraction(self.norm())
        if n is None:
            return None
        x2 = (self.re + n) / 2
        x = _sqrt_fraction(x2)
        if x is None or x == 0:
            return None
        y = self.im / (2 * x)
        root = GaussianRational(x, y)
        return root if root * root == self else None

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
MINUS_ONE = GaussianRational(-1)


def _coerce(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


def as_gaussian(value) -> GaussianRational:
    """Coerce int/Fraction/str/GaussianRational into a GaussianRational."""
    if isinstance(value, str):
        return parse_scalar(value)
    coerced = _coerce(value)
    if coerced is None:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return coerced


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def parse_scalar(text: str) -> GaussianRational:
    """Parse the scalar grammar; whitespace anywhere is ignored."""
    compact = "".join(text.split())
    m = _SCALAR_RE.match(compact)
    if m is None:
        raise ParseError(f"not a valid scalar: {text!r}")
    try:
        if m.group("re_only") is not None:
            return GaussianRational(Fraction(m.group("re_only")))
        if m.group("im_only") is not None:
            return GaussianRational(0, Fraction(m.group("im_only")))
        im = Fraction(m.group("both_im"))
        if m.group("sign") == "-":
            im = -im
        return GaussianRational(Fraction(m.group("both_re")), im)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in scalar: {text!r}") from None


def format_scalar(z: GaussianRational) -> str:
    """Canonical text for a scalar; round-trips through parse_scalar."""
    if not z.im:
        return str(z.re)
    if not z.re:
        return f"{z.im}i"
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"
