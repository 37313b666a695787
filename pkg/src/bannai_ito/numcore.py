"""Exact scalars and the few floating-point helpers used for weight cross-checks.

Rationals are :class:`fractions.Fraction` (always stored reduced, denominator
positive).  :class:`GaussRat` extends them to the Gaussian field Q(i).  There is
deliberately no float -> rational conversion here: exact code paths never see
floats, and numeric code only ever calls ``float()`` on exact values.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import PoleError

Rat = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    Decimal and exponent notations are rejected on purpose.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rat(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _coerce_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussRat:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _coerce_rat(re)
        self.im = _coerce_rat(im)

    @classmethod
    def _lift(cls, other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls(other, 0)
        return None

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        p = self * o.conjugate()
        return GaussRat(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRat(1) / (self ** -k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({format_rat(self.re)!r}, {format_rat(self.im)!r})"

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{format_rat(self.re)}{sign}{format_rat(abs(self.im))}i"

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        """Parse ``"p/q+r/si"`` (either part may be omitted)."""
        t = text.replace(" ", "")
        if not t.endswith("i"):
            return cls(parse_rat(t), 0)
        body = t[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut <= 0:
            im = body if body not in ("", "+", "-") else body + "1"
            return cls(0, parse_rat(im))
        re_part, im_part = body[:cut], body[cut:]
        if im_part in ("+", "-"):
            im_part += "1"
        return cls(parse_rat(re_part), parse_rat(im_part))


I = GaussRat(0, 1)


def pochhammer(x, n: int):
    """Rising factorial x(x+1)...(x+n-1); works for any ring scalar, including Poly."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = x - x + 1  # unit of whatever ring x lives in
    for k in range(n):
        out = out * (x + k)
    return out


def rat_sqrt(x: Fraction):
    """Exact square root of a nonnegative rational, or None when irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(log_abs)``; sign 0 means exact zero."""

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def __mul__(self, other: "SignedLog") -> "SignedLog":
        if self.sign == 0 or other.sign == 0:
            return SignedLog(0.0, 0)
        return SignedLog(self.log_abs + other.log_abs, self.sign * other.sign)

    def __truediv__(self, other: "SignedLog") -> "SignedLog":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLog")
        if self.sign == 0:
            return SignedLog(0.0, 0)
        return SignedLog(self.log_abs - other.log_abs, self.sign * other.sign)

    @classmethod
    def from_float(cls, x: float) -> "SignedLog":
        if x == 0:
            return cls(0.0, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)


def lgamma_signed(x: float) -> SignedLog:
    """Gamma(x) as a SignedLog, valid off the poles 0, -1, -2, ...

    log|Gamma| comes from ``math.lgamma`` (which already applies the reflection
    identity for negative arguments); the sign alternates between consecutive
    negative poles and is +1 for x > 0.
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x}")
    log_abs = math.lgamma(x)
    if x > 0:
        return SignedLog(log_abs, 1)
    # Gamma < 0 on (-1, 0), > 0 on (-2, -1), ...
    k = math.floor(-x)
    return SignedLog(log_abs, -1 if k % 2 == 0 else 1)
