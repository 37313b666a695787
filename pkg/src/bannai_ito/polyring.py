"""Dense univariate polynomials over Fraction or GaussRat.

Coefficients are stored lowest power first with trailing zeros stripped, so the
zero polynomial is the empty tuple and equality is plain tuple equality.  The
reflection ``p(-x)``, the shifts ``p(x+c)`` and exact division by linear
factors are what the Dunkl shift operators are built from.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import ExactDivisionError, PoleError
from .numcore import GaussRat, format_rat, parse_rat, pochhammer

DEFAULT_DEGREE_CAP = 64


def _scalar(c):
    if isinstance(c, (Fraction, GaussRat)):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"unsupported polynomial coefficient {c!r}")


def _format_scalar(c) -> str:
    if isinstance(c, GaussRat):
        return str(c)
    return format_rat(c)


class Poly:
    """Immutable dense polynomial ``sum(coeffs[k] * x**k)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def linear(cls, a, b) -> "Poly":
        """The polynomial ``a*x + b``."""
        return cls((b, a))

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "Poly":
        out = cls.const(lead)
        for r in roots:
            out = out * cls((-r, 1))
        return out

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_real(self) -> bool:
        return all(not isinstance(c, GaussRat) or c.im == 0 for c in self.coeffs)

    def real_part(self) -> "Poly":
        return Poly(c.re if isinstance(c, GaussRat) else c for c in self.coeffs)

    def imag_part(self) -> "Poly":
        return Poly(c.im if isinstance(c, GaussRat) else 0 for c in self.coeffs)

    def to_gauss(self) -> "Poly":
        return Poly(c if isinstance(c, GaussRat) else GaussRat(c) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self == Poly.const(_scalar(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(_format_scalar(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            s = _format_scalar(c)
            if isinstance(c, GaussRat):
                s = f"({s})"
            terms.append(s if k == 0 else f"{s}*x" if k == 1 else f"{s}*x^{k}")
        return " + ".join(terms)

    # -- ring operations --------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, Poly):
            return other
        try:
            return Poly.const(_scalar(other))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[k] + b[k] if k < len(b) else a[k] for k in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly()
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
            return Poly(out)
        try:
            c = _scalar(other)
        except TypeError:
            return NotImplemented
        return Poly(x * c for x in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a scalar only; polynomial division goes through the exact_* helpers."""
        c = _scalar(other)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero scalar")
        return Poly(x / c for x in self.coeffs)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation & composition ----------------------------------------
    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: "Poly") -> "Poly":
        """p(q(x)) by Horner's rule."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def compose_affine(self, a, b) -> "Poly":
        """p(a*x + b)."""
        return self.compose(Poly.linear(a, b))

    def reflect(self) -> "Poly":
        """p(-x)."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def shift(self, h) -> "Poly":
        """p(x + h) via binomial expansion."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        hpow = [Fraction(1)]
        for _ in range(n):
            hpow.append(hpow[-1] * h)
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j in range(k + 1):
                out[j] = out[j] + c * comb(k, j) * hpow[k - j]
        return Poly(out)

    def shift_plus(self) -> "Poly":
        """p(x + 1)."""
        return self.shift(1)

    def compose_neg_shift(self) -> "Poly":
        """p(-x - 1), i.e. the action of the shift-reflection T+R."""
        return self.reflect().shift_plus()

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    # -- exact division ---------------------------------------------------
    def exact_div_linear(self, a, b) -> "Poly":
        """Quotient q with q*(a*x + b) == self; raises if the remainder is nonzero."""
        if a == 0:
            raise ZeroDivisionError("linear divisor has zero leading coefficient")
        root = -b / a if isinstance(b, GaussRat) else -_scalar(b) / a
        cs = self.coeffs
        if not cs:
            return Poly()
        # synthetic division by (x - root)
        q = [Fraction(0)] * (len(cs) - 1)
        acc = cs[-1]
        for k in range(len(cs) - 2, -1, -1):
            q[k] = acc
            acc = cs[k] + acc * root
        if acc != 0:
            raise ExactDivisionError(
                f"remainder {_format_scalar(acc)} dividing by ({_format_scalar(_scalar(a))})x+({_format_scalar(_scalar(b))})"
            )
        return Poly(q) / a

    def exact_div_root(self, root) -> "Poly":
        """Quotient by (x - root); raises unless root is a root."""
        return self.exact_div_linear(1, -root)

    def exact_div(self, d: "Poly") -> "Poly":
        """General exact polynomial division (long division, zero remainder required)."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = d.degree
        if len(rem) - 1 < dd:
            if rem:
                raise ExactDivisionError("dividend degree below divisor degree")
            return Poly()
        q = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] / d.lead
            q[k - dd] = c
            if c == 0:
                continue
            for j, dj in enumerate(d.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - c * dj
        if any(r != 0 for r in rem):
            raise ExactDivisionError("nonzero remainder in exact polynomial division")
        return Poly(q)

    # -- parity helpers ---------------------------------------------------
    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def in_square(self) -> "Poly":
        """For an even polynomial p(x) return q with q(x^2) == p(x)."""
        if not self.is_even():
            raise ExactDivisionError("polynomial has odd powers; not a function of x^2")
        return Poly(self.coeffs[0::2])

    def of_square(self) -> "Poly":
        """q(x^2) for this q."""
        out = []
        for c in self.coeffs:
            out.extend((c, Fraction(0)))
        return Poly(out)

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.lead

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list:
        return [_format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "Poly":
        out = []
        for s in items:
            out.append(GaussRat.parse(s) if s.rstrip().endswith("i") else parse_rat(s))
        return cls(out)


def reflect(p: Poly) -> Poly:
    return p.reflect()


def shift_plus(p: Poly) -> Poly:
    return p.shift_plus()


def compose_neg_shift(p: Poly) -> Poly:
    return p.compose_neg_shift()


def exact_div_linear(p: Poly, a, b) -> Poly:
    return p.exact_div_linear(a, b)


class RationalFunction:
    """``num/den`` kept unreduced; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num if isinstance(num, Poly) else Poly.const(num)
        self.den = den if isinstance(den, Poly) else Poly.const(den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise PoleError(f"rational function has a pole at {x}")
        return self.num(x) / d

    def compose_affine(self, a, b) -> "RationalFunction":
        return RationalFunction(self.num.compose_affine(a, b), self.den.compose_affine(a, b))

    def shift(self, h) -> "RationalFunction":
        return RationalFunction(self.num.shift(h), self.den.shift(h))

    def reflect(self) -> "RationalFunction":
        return RationalFunction(self.num.reflect(), self.den.reflect())

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other: "RationalFunction"):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    def cross_residual(self, other: "RationalFunction") -> Poly:
        """num1*den2 - num2*den1; zero exactly when the functions agree."""
        return self.num * other.den - other.num * self.den

    def equals(self, other: "RationalFunction") -> bool:
        return self.cross_residual(other).is_zero()

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


# -- the interpolation basis adapted to L ---------------------------------

def phi_basis(n: int, r1) -> Poly:
    """phi_{2m} = (x-r1+1/2)_m (-x-r1+1/2)_m,  phi_{2m+1} = (x-r1+1/2)_{m+1} (-x-r1+1/2)_m."""
    if n < 0:
        raise ValueError("phi_basis needs n >= 0")
    half = Fraction(1, 2)
    up = Poly.linear(1, half - r1)
    down = Poly.linear(-1, half - r1)
    m = n // 2
    return pochhammer(up, m + (n % 2)) * pochhammer(down, m)


def phi_leading_sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def newton_node(n: int, r1) -> Fraction:
    """Root added when passing from phi_{n-1} to phi_n.

    phi_n = (-1)^{n(n-1)/2} prod_{i<=n} (x - node_i), with
    node_n = (-1)^n (n/2 - r1 - 1/4) - 1/4.
    """
    if n < 1:
        raise ValueError("newton_node needs n >= 1")
    sign = 1 if n % 2 == 0 else -1
    return sign * (Fraction(n, 2) - r1 - Fraction(1, 4)) - Fraction(1, 4)
