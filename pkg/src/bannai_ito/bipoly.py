"""Bannai-Ito polynomials: recurrence data, generation, phi-basis expansion
and the finite (truncated) parameter families.

The monic polynomials obey

    P_{n+1} = (x - b_n) P_n - u_n P_{n-1},   b_n = rho1 - A_n - C_n,   u_n = A_{n-1} C_n,

with A_n, C_n given in closed form below.  Every table is built twice (from
A_n, C_n and from the independent closed forms of u_n and b_n) and the two
are compared before anything is returned.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Union

from .dunklop import HALF, QUARTER, BIParams, lambda_n, mu_n, nu_n
from .errors import InvariantError, ParameterError
from .numcore import format_rat, pochhammer
from .polyring import Poly, phi_basis, phi_leading_sign


# -- closed-form recurrence coefficients ---------------------------------------

def _g_plus(p: BIParams, k: int) -> Fraction:
    d = p.g + k
    if d == 0:
        raise ParameterError(
            f"g+{k} = 0 with g = {format_rat(p.g)}",
            condition=f"g+n=0 at n={k} (recurrence-coefficient denominator)",
        )
    return d


def coeff_A(p: BIParams, n: int) -> Fraction:
    r1, r2, s1, s2 = p.r1, p.r2, p.rho1, p.rho2
    d = 4 * _g_plus(p, n + 1)
    if n % 2 == 0:
        return (n + 1 + 2 * s1 - 2 * r1) * (n + 1 + 2 * s1 - 2 * r2) / d
    return (n + 1 - 2 * r1 - 2 * r2 + 2 * s1 + 2 * s2) * (n + 1 + 2 * s1 + 2 * s2) / d


def coeff_C(p: BIParams, n: int) -> Fraction:
    if n == 0:
        return Fraction(0)
    r1, r2, s2 = p.r1, p.r2, p.rho2
    d = 4 * _g_plus(p, n)
    if n % 2 == 0:
        return -n * (n - 2 * r1 - 2 * r2) / d
    return -(n - 2 * r2 + 2 * s2) * (n - 2 * r1 + 2 * s2) / d


def u_closed(p: BIParams, n: int) -> Fraction:
    """u_n straight from its factored closed form (n >= 1)."""
    r1, r2, s1, s2 = p.r1, p.r2, p.rho1, p.rho2
    den = 16 * _g_plus(p, n) ** 2
    if n % 2 == 0:
        return -n * (n + 2 * s1 + 2 * s2) * (n - 2 * r1 - 2 * r2) * (n + 2 * p.g) / den
    return -(n + 2 * s1 - 2 * r1) * (n + 2 * s1 - 2 * r2) * (n + 2 * s2 - 2 * r1) * (n + 2 * s2 - 2 * r2) / den


def b_closed(p: BIParams, n: int) -> Fraction:
    """b_n from the eigenvalue mu_n of X: -1/4 + (omega3 mu_n + omega2/2)/(4 mu_n^2 - 1)."""
    m = mu_n(p, n)
    den = 4 * m * m - 1
    if den == 0:
        raise ParameterError(f"4 mu_{n}^2 - 1 = 0", condition=f"g+n=0 near n={n} (recurrence-coefficient denominator)")
    return -QUARTER + (p.omega3 * m + p.omega2 / 2) / den


# -- recurrence table -----------------------------------------------------------

@dataclass
class RecurrenceTable:
    """Recurrence data for P_0..P_N.

    ``u`` has N+2 entries: u[0] = 0 by convention and u[N+1] decides whether
    the family truncates.  ``h[n] = u_1 ... u_n``.
    """

    params: BIParams
    N: int
    A: List[Fraction]
    C: List[Fraction]
    b: List[Fraction]
    u: List[Fraction]
    h: List[Fraction]

    def rows(self):
        for n in range(self.N + 1):
            yield n, self.A[n], self.C[n], self.b[n], self.u[n], self.h[n]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "A", "C", "b", "u", "h"])
        for row in self.rows():
            w.writerow([row[0]] + [format_rat(v) for v in row[1:]])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "N": self.N,
            "A": [format_rat(v) for v in self.A],
            "C": [format_rat(v) for v in self.C],
            "b": [format_rat(v) for v in self.b],
            "u": [format_rat(v) for v in self.u],
            "h": [format_rat(v) for v in self.h],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def recurrence_coeffs(p: BIParams, N: int) -> RecurrenceTable:
    """A_n, C_n, b_n for n <= N and u_n for n <= N+1, cross-checked against the closed forms."""
    if N < 0:
        raise ValueError("N must be >= 0")
    A = [coeff_A(p, n) for n in range(N + 1)]
    C = [coeff_C(p, n) for n in range(N + 2)]
    b = [p.rho1 - A[n] - C[n] for n in range(N + 1)]
    u = [Fraction(0)] + [A[n - 1] * C[n] for n in range(1, N + 2)]
    for n in range(N + 1):
        try:
            want = b_closed(p, n)
        except ParameterError:
            # 4 mu_n^2 - 1 = 4 (n + g)(n + g + 1) vanishes at n = 0 when g = 0, where
            # the closed form has a removable singularity but A_0, C_0 are regular
            if n == 0 and p.g == 0:
                continue
            raise
        if b[n] != want:
            raise InvariantError(f"b_{n}: rho1-A-C = {b[n]} but closed form gives {want}")
    for n in range(1, N + 2):
        if u[n] != u_closed(p, n):
            raise InvariantError(f"u_{n}: A_(n-1)C_n = {u[n]} but closed form gives {u_closed(p, n)}")
    h = [Fraction(1)]
    for n in range(1, N + 1):
        h.append(h[-1] * u[n])
    return RecurrenceTable(p, N, A, C[: N + 1], b, u, h)


def generate_from_table(b: Sequence[Fraction], u: Sequence[Fraction], N: int) -> List[Poly]:
    """Monic P_0..P_N from diagonal b and products u (u[0] unused)."""
    x = Poly.x()
    P = [Poly.const(1)]
    if N >= 1:
        P.append(x - b[0])
    for n in range(1, N):
        P.append((x - b[n]) * P[n] - u[n] * P[n - 1])
    return P[: N + 1]


def generate_P(p: Union[BIParams, RecurrenceTable], N: int) -> List[Poly]:
    t = p if isinstance(p, RecurrenceTable) else recurrence_coeffs(p, N)
    if t.N < N:
        t = recurrence_coeffs(t.params, N)
    return generate_from_table(t.b, t.u, N)


def associated_polys(t: RecurrenceTable, N: int) -> List[Poly]:
    """First associated polynomials: same recurrence with indices shifted by one."""
    if N > t.N:
        raise ValueError("table too short for the requested degree")
    x = Poly.x()
    Q = [Poly.const(1)]
    if N >= 1:
        Q.append(x - t.b[1])
    for n in range(1, N):
        Q.append((x - t.b[n + 1]) * Q[n] - t.u[n + 1] * Q[n - 1])
    return Q[: N + 1]


def positivity_scan(t: RecurrenceTable) -> Optional[int]:
    """First n in 1..N+1 with u_n <= 0, or None."""
    for n in range(1, t.N + 2):
        if t.u[n] <= 0:
            return n
    return None


# -- expansion in the phi basis ---------------------------------------------------

@dataclass
class ExpansionTable:
    """Coefficients a_s = A_{ns}/A_{n0} of P_n in the phi basis."""

    params: BIParams
    n: int
    coeffs: List[Fraction]

    @property
    def a_n0(self) -> Fraction:
        # phi_n has leading coefficient (-1)^{n(n-1)/2}; P_n is monic
        return Fraction(phi_leading_sign(self.n)) / self.coeffs[self.n]

    def poly(self) -> Poly:
        r1 = self.params.r1
        return sum((c * phi_basis(s, r1) for s, c in enumerate(self.coeffs)), Poly())

    def monic_poly(self) -> Poly:
        return self.a_n0 * self.poly()

    def to_dict(self) -> dict:
        return {"n": self.n, "relative": [format_rat(c) for c in self.coeffs], "A_n0": format_rat(self.a_n0)}


def expansion_coeffs(p: BIParams, n: int) -> ExpansionTable:
    """Build a_{s+1} = a_s (lambda_n - lambda_s) / nu_{s+1} from a_0 = 1."""
    lam = lambda_n(p, n)
    out = [Fraction(1)]
    for s in range(n):
        nu = nu_n(p, s + 1)
        if nu == 0:
            raise ParameterError(f"nu_{s + 1} = 0", condition=f"nu_{s + 1}=0 (phi-basis expansion degenerate)")
        out.append(out[-1] * (lam - lambda_n(p, s)) / nu)
    return ExpansionTable(p, n, out)


def _shifted(p: BIParams):
    """The three lower parameters shared by all expansion formulas."""
    return 1 - p.r1 - p.r2, HALF + p.rho1 - p.r1, HALF + p.rho2 - p.r1


def expansion_closed(p: BIParams, n: int) -> List[Fraction]:
    """a_s from the parity-split Pochhammer formulas."""
    c0, c1, c2 = _shifted(p)
    g = p.g
    out = []
    for k in range(n + 1):
        s, odd_s = divmod(k, 2)
        den = factorial(s) * pochhammer(c0, s)
        if n % 2 == 0:
            top = Fraction(n, 2) + 1 + g
            if not odd_s:
                v = pochhammer(Fraction(-n, 2), s) * pochhammer(top, s) / (den * pochhammer(c1, s) * pochhammer(c2, s))
            else:
                xi = Fraction(n) / (2 * c1 * c2)
                v = xi * pochhammer(1 - Fraction(n, 2), s) * pochhammer(top, s) / (
                    den * pochhammer(c1 + 1, s) * pochhammer(c2 + 1, s))
        else:
            lo = Fraction(1 - n, 2)
            if not odd_s:
                v = pochhammer(lo, s) * pochhammer(Fraction(n + 1, 2) + g, s) / (
                    den * pochhammer(c1, s) * pochhammer(c2, s))
            else:
                eta = (Fraction(n + 1, 2) + g) / (c1 * c2)
                v = -eta * pochhammer(lo, s) * pochhammer(Fraction(n + 3, 2) + g, s) / (
                    den * pochhammer(c1 + 1, s) * pochhammer(c2 + 1, s))
        out.append(v)
    return out


def _hyper_4f3(upper: Sequence, lower: Sequence[Fraction], terms: int) -> Poly:
    """Terminating 4F3(1) whose upper parameters may be linear polynomials in x."""
    total = Poly()
    for k in range(terms):
        num = Poly.const(1)
        for a in upper:
            num = num * pochhammer(a, k)
        den = Fraction(factorial(k))
        for c in lower:
            den *= pochhammer(c, k)
        if den == 0:
            raise ParameterError(f"lower Pochhammer vanishes at k={k}",
                                 condition="4F3 lower parameter is a nonpositive integer")
        total = total + num / den
    return total


def _hyper_parameter_lists(p: BIParams, n: int):
    """Upper/lower parameter lists of the two 4F3 pieces and the prefactor of the second."""
    c0, c1, c2 = _shifted(p)
    if c1 * c2 == 0:
        raise ParameterError("4F3 prefactor has a zero lower parameter",
                             condition="4F3 lower parameter is a nonpositive integer")
    g = p.g
    xa = Poly.linear(1, HALF - p.r1)       # x - r1 + 1/2
    xb = Poly.linear(-1, HALF - p.r1)      # -x - r1 + 1/2
    if n % 2 == 0:
        first = [Fraction(-n, 2), Fraction(n, 2) + 1 + g, xa, xb]
        second = [1 - Fraction(n, 2), Fraction(n, 2) + 1 + g, xa + 1, xb]
        pref = Fraction(n) / (2 * c1 * c2)
    else:
        first = [Fraction(1 - n, 2), Fraction(n + 1, 2) + g, xa, xb]
        second = [Fraction(1 - n, 2), Fraction(n + 3, 2) + g, xa + 1, xb]
        pref = -(Fraction(n + 1, 2) + g) / (c1 * c2)
    return (first, [c0, c1, c2]), (second, [c0, c1 + 1, c2 + 1]), pref, xa


def hypergeometric_form(p: BIParams, n: int) -> Poly:
    """P_n / A_{n0} as the sum of two terminating 4F3(1) series."""
    (u1, l1), (u2, l2), pref, xa = _hyper_parameter_lists(p, n)
    return _hyper_4f3(u1, l1, n // 2 + 1) + pref * xa * _hyper_4f3(u2, l2, (n + 1) // 2)


def hypergeometric_balance(p: BIParams, n: int) -> List[Poly]:
    """Sum(upper) - sum(lower) for each 4F3 piece; zero-balanced means both vanish."""
    out = []
    for upper, lower in _hyper_parameter_lists(p, n)[:2]:
        s = Poly()
        for a in upper:
            s = s + a
        out.append(s - sum(lower, Fraction(0)))
    return out


# -- finite (truncated) families --------------------------------------------------

def truncation_even(r1, e, d, N: int) -> BIParams:
    """Parameters with 2(r2 - rho2) = N + 1, so that u_{N+1} = 0 (N even)."""
    r1, e, d = Fraction(r1), Fraction(e), Fraction(d)
    if N < 2 or N % 2:
        raise ParameterError("even truncation needs an even N >= 2", condition="N even >= 2")
    if not (r1 > 0 and e > 0 and d > 0):
        raise ParameterError("even truncation needs r1, e, d > 0", condition="r1, e, d > 0")
    return BIParams(r1, r1 + e + Fraction(N, 2), r1 + e + d + Fraction(N - 1, 2), r1 - HALF + e, max_degree=N + 1)


def truncation_odd(zeta, eta, xi, N: int) -> BIParams:
    """Parameters with r1 + r2 = (N + 1)/2, so that u_{N+1} = 0 (N odd).

    Positivity of u_1..u_N needs xi > zeta (the factor N - n + 2(xi - zeta) at n = N).
    """
    zeta, eta, xi = Fraction(zeta), Fraction(eta), Fraction(xi)
    if N < 3 or N % 2 == 0:
        raise ParameterError("odd truncation needs an odd N >= 3", condition="N odd >= 3")
    if not (zeta > 0 and eta > 0 and xi > 0):
        raise ParameterError("odd truncation needs zeta, eta, xi > 0", condition="zeta, eta, xi > 0")
    if not xi > zeta:
        raise ParameterError("odd truncation needs xi > zeta for u_N > 0", condition="xi > zeta")
    return BIParams(
        (1 - zeta - eta) / 2,
        (eta + zeta + N) / 2,
        (eta - zeta) / 2,
        (zeta - eta - 2 * xi - N + 1) / 2,
        max_degree=N + 1,
    )


def truncated_u_even(r1, e, d, N: int, n: int) -> Fraction:
    """u_n of the even-N truncation, written directly in (r1, e, d)."""
    r1, e, d = Fraction(r1), Fraction(e), Fraction(d)
    den = 16 * (n - 1 + e + d) ** 2
    if n % 2 == 0:
        return n * (n + 4 * r1 - 2 + 4 * e + 2 * d + N) * (-n + 4 * r1 + 2 * e + N) * (n - 2 + 2 * e + 2 * d) / den
    return (n - 1 + 2 * e + 2 * d + N) * (n - 1 + 2 * d) * (n - 1 + 2 * e) * (-n + 1 + N) / den


def truncated_u_odd(zeta, eta, xi, N: int, n: int) -> Fraction:
    """u_n of the odd-N truncation, written directly in (zeta, eta, xi)."""
    zeta, eta, xi = Fraction(zeta), Fraction(eta), Fraction(xi)
    den = 16 * (-n + N + xi) ** 2
    if n % 2 == 0:
        return n * (-n + N - 1 + 2 * xi) * (-n + N + 1) * (-n + 2 * N + 2 * xi) / den
    return (n + 2 * eta - 1) * (-n + 2 * zeta + N) * (-n - 2 * zeta + N + 2 * xi) * (-n + 2 * eta + 2 * N - 1 + 2 * xi) / den
