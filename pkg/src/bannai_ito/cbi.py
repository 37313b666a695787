"""Complementary Bannai-Ito polynomials and the symmetric specializations.

The kernel polynomials W_n = (P_{n+1} - A_n P_n)/(x - rho1) satisfy

    x W_n = W_{n+1} + (-1)^n rho2 W_n + v_n W_{n-1},   v_n = A_n C_n,

and P_n = W_n - C_n W_{n-1} recovers the Bannai-Ito family.  W_{2n} is even
and W_{2n+1} is divisible by x - rho2, which splits the family into two
Wilson families U_n, V_n in y = x^2.

The symmetric case rho1 = -r1, rho2 = -r2 (after x -> ix - 1/4) gives the
continuous dual Hahn polynomials; r2 = 0 further gives Meixner-Pollaczek.
Those identities are checked over Q(i) with GaussRat coefficients.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from .bipoly import coeff_A, coeff_C, generate_P
from .dunklop import HALF, QUARTER, BIParams
from .errors import InvariantError, ParameterError, PoleError
from .numcore import I, GaussRat, format_rat, pochhammer
from .polyring import Poly
from .report import VerificationReport


# -- Christoffel / Geronimus pair -----------------------------------------------

def christoffel(P: Sequence[Poly], theta, A: Sequence[Fraction] = None) -> List[Poly]:
    """W_n = (P_{n+1} - A_n P_n)/(x - theta) for n < len(P) - 1.

    Without ``A`` the multipliers are A_n = P_{n+1}(theta)/P_n(theta).  With a
    supplied ``A`` a wrong value surfaces as an ExactDivisionError.
    """
    W = []
    for n in range(len(P) - 1):
        if A is None:
            at = P[n](theta)
            if at == 0:
                raise PoleError(f"P_{n}(theta) = 0, Christoffel multiplier undefined")
            a = P[n + 1](theta) / at
        else:
            a = A[n]
        W.append((P[n + 1] - a * P[n]).exact_div_root(theta))
    return W


def geronimus_reconstruct(W: Sequence[Poly], C: Sequence[Fraction]) -> List[Poly]:
    """P_n = W_n - C_n W_{n-1} (C_0 = 0)."""
    out = [W[0]]
    for n in range(1, len(W)):
        out.append(W[n] - C[n] * W[n - 1])
    return out


def cbi_v(p: BIParams, n: int) -> Fraction:
    """Product coefficient v_n of the kernel recurrence, closed form."""
    if n == 0:
        return Fraction(0)  # C_0 = 0; the closed form is 0/0 there when g = 0
    m, odd = divmod(n, 2)
    r1, r2, s1, s2, g = p.r1, p.r2, p.rho1, p.rho2, p.g
    if not odd:
        den = (2 * m + 1 + g) * (2 * m + g)
        if den == 0:
            raise ParameterError(f"v_{n} denominator vanishes", condition=f"g+n=0 near n={n}")
        return -m * (m + s1 - r1 + HALF) * (m + s1 - r2 + HALF) * (m - r1 - r2) / den
    den = (2 * m + 1 + g) * (2 * m + g + 2)
    if den == 0:
        raise ParameterError(f"v_{n} denominator vanishes", condition=f"g+n=0 near n={n}")
    return -(m + g + 1) * (m + s1 + s2 + 1) * (m + s2 - r1 + HALF) * (m + s2 - r2 + HALF) / den


@dataclass
class CBITable:
    params: BIParams
    N: int
    v: List[Fraction]
    W: List[Poly]

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "N": self.N,
            "v": [format_rat(x) for x in self.v],
            "W": [w.to_json() for w in self.W],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "v", "diag"])
        for n in range(self.N + 1):
            diag = self.params.rho2 if n % 2 == 0 else -self.params.rho2
            w.writerow([n, format_rat(self.v[n]), format_rat(diag)])
        return buf.getvalue()


def cbi_table(p: BIParams, N: int) -> CBITable:
    """W_0..W_N via the Christoffel transform at theta = rho1, with v_n cross-checked."""
    P = generate_P(p, N + 1)
    A = [coeff_A(p, n) for n in range(N + 1)]
    for n in range(N + 1):
        at = P[n](p.rho1)
        if at == 0 or P[n + 1](p.rho1) / at != A[n]:
            raise InvariantError(f"A_{n} differs from P_{n + 1}(rho1)/P_{n}(rho1)")
    W = christoffel(P, p.rho1, A)
    v = []
    for n in range(N + 1):
        vn = cbi_v(p, n)
        if vn != A[n] * coeff_C(p, n):
            raise InvariantError(f"v_{n} closed form disagrees with A_n C_n")
        v.append(vn)
    return CBITable(p, N, v, W)


def cbi_recurrence_residuals(t: CBITable) -> List[Poly]:
    """W_{n+1} + (-1)^n rho2 W_n + v_n W_{n-1} - x W_n for 0 <= n < N."""
    x = Poly.x()
    s2 = t.params.rho2
    out = []
    for n in range(t.N):
        prev = t.W[n - 1] if n else Poly()
        sign = 1 if n % 2 == 0 else -1
        out.append(t.W[n + 1] + sign * s2 * t.W[n] + t.v[n] * prev - x * t.W[n])
    return out


# -- the two Wilson families -----------------------------------------------------

def split_UV(W: Sequence[Poly], rho2) -> Tuple[List[Poly], List[Poly]]:
    """U_n(y) with U_n(x^2) = W_{2n}(x);  V_n(y) with V_n(x^2) = W_{2n+1}(x)/(x - rho2)."""
    U, V = [], []
    for k, w in enumerate(W):
        if k % 2 == 0:
            U.append(w.in_square())
        else:
            V.append(w.exact_div_root(rho2).in_square())
    return U, V


def _wilson_data(kind: str, p: BIParams):
    if kind not in ("U", "V"):
        raise ValueError("kind must be 'U' or 'V'")
    shift = 0 if kind == "U" else 1
    return p.rho2 + shift, p.g + shift


def wilson_series(kind: str, n: int, p: BIParams) -> Poly:
    """The terminating 4F3(1) in y = x^2 (not normalized)."""
    s2, gg = _wilson_data(kind, p)
    lower = (p.rho1 + s2 + 1, s2 - p.r1 + HALF, s2 - p.r2 + HALF)
    y = Poly.x()
    total = Poly()
    pair = Poly.const(1)  # (s2+x)_k (s2-x)_k = prod_{j<k} ((s2+j)^2 - y)
    for k in range(n + 1):
        den = Fraction(factorial(k))
        for c in lower:
            den *= pochhammer(c, k)
        if den == 0:
            raise ParameterError(f"lower Pochhammer vanishes at k={k}", condition="Wilson denominator parameters")
        total = total + pochhammer(Fraction(-n), k) * pochhammer(n + gg + 1, k) / den * pair
        pair = pair * (Poly.const((s2 + k) ** 2) - y)
    return total


def wilson_kappa(kind: str, n: int, p: BIParams) -> Fraction:
    """Normalizer making the 4F3 monic in y."""
    s2, gg = _wilson_data(kind, p)
    den = pochhammer(n + gg + 1, n)
    if den == 0:
        raise ParameterError("Wilson normalizer denominator vanishes", condition="g+n=0")
    return pochhammer(1 + p.rho1 + s2, n) * pochhammer(s2 - p.r1 + HALF, n) * pochhammer(s2 - p.r2 + HALF, n) / den


def wilson_4F3(kind: str, n: int, p: BIParams) -> Poly:
    """Monic U_n (kind 'U') or V_n (kind 'V') in y, from the 4F3 closed form."""
    return wilson_kappa(kind, n, p) * wilson_series(kind, n, p)


# -- symmetric case: continuous dual Hahn and Meixner-Pollaczek -----------------------

def u_tilde(r1, r2, n: int) -> Fraction:
    r1, r2 = Fraction(r1), Fraction(r2)
    if n % 2 == 0:
        return n * (n - 4 * (r1 + r2)) / 16
    return (n - 4 * r1) * (n - 4 * r2) / 16


def symmetric_stilde(r1, r2, N: int) -> List[Poly]:
    """S~_0..S~_N from S~_{n+1} = x S~_n - u~_n S~_{n-1}."""
    x = Poly.x()
    S = [Poly.const(1), x]
    for n in range(1, N):
        S.append(x * S[n] - u_tilde(r1, r2, n) * S[n - 1])
    return S[: N + 1]


def stilde_from_bi(r1, r2, N: int) -> List[Poly]:
    """i^{-n} P_n(ix - 1/4) with rho = -r; asserts the result has real coefficients."""
    r1, r2 = Fraction(r1), Fraction(r2)
    p = BIParams(r1, r2, -r1, -r2, max_degree=N)
    out = []
    for n, Pn in enumerate(generate_P(p, N)):
        s = Pn.to_gauss().compose_affine(I, GaussRat(-QUARTER)) * (I ** (-n))
        if not s.is_real():
            raise InvariantError(f"S~_{n} from the Bannai-Ito side has imaginary coefficients")
        out.append(s.real_part())
    return out


def dual_hahn_3F2(n: int, a, b, parity: int = None) -> Poly:
    """S~_n from the continuous dual Hahn 3F2 with argument pair a +- 2ix.

    ``parity`` defaults to n % 2; the index of the 3F2 is n // 2.
    """
    a, b = Fraction(a), Fraction(b)
    parity = n % 2 if parity is None else parity
    m = n // 2
    x2 = Poly((0, 0, 1))
    low = a if parity == 0 else a + 1
    total = Poly()
    pair = Poly.const(1)  # (a+2ix)_k (a-2ix)_k = prod_{j<k} ((a+j)^2 + 4x^2)
    for k in range(m + 1):
        den = factorial(k) * pochhammer(low, k) * pochhammer(a + b, k)
        if den == 0:
            raise ParameterError(f"lower Pochhammer vanishes at k={k}", condition="dual Hahn denominator parameters")
        total = total + pochhammer(Fraction(-m), k) / den * pair
        pair = pair * (Poly.const((a + k) ** 2) + 4 * x2)
    sign = -1 if m % 2 else 1
    kappa = sign * Fraction(1, 4 ** m) * pochhammer(low, m) * pochhammer(a + b, m)
    out = kappa * total
    return out * Poly.x() if parity else out


def meixner_pollaczek_2F1(n: int, a) -> Poly:
    """i^n 4^{-n} (2a)_n 2F1(-n, a + 2ix; 2a; 2), over Q(i)."""
    a = Fraction(a)
    arg = Poly((GaussRat(a), GaussRat(0, 2)))
    total = Poly()
    for k in range(n + 1):
        den = factorial(k) * pochhammer(2 * a, k)
        if den == 0:
            raise ParameterError("2a is a nonpositive integer", condition="Meixner-Pollaczek denominator")
        total = total + pochhammer(Fraction(-n), k) * 2 ** k / den * pochhammer(arg, k)
    return total * (I ** n) * Fraction(1, 4 ** n) * pochhammer(2 * a, n)


def lambda_symmetric(r1, r2, n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(n, 2)
    return 2 * (Fraction(r1) + Fraction(r2)) - Fraction(n + 1, 2)


def symmetric_dunkl_residual(r1, r2, S: Poly, lam) -> Poly:
    """Phi1(y)(S(-y-i/2) - S(y)) + Phi2(y)(S(-y+i/2) - S(y)) - lam S(y) over Q(i)."""
    a = -2 * Fraction(r1) + HALF
    b = -2 * Fraction(r2) + HALF
    y = Poly.x().to_gauss()
    s = S.to_gauss()
    num1 = (y + I * a / 2) * (y + I * b / 2) * (-I / 2)
    num2 = (y - I * a / 2) * (y - I * b / 2) * (I / 2)
    d1 = (s.compose_affine(-1, -I / 2) - s).exact_div_linear(1, I / 4)
    d2 = (s.compose_affine(-1, I / 2) - s).exact_div_linear(1, -I / 4)
    return num1 * d1 + num2 * d2 - lam * s


def meixner_pollaczek_residuals(r1, S: Poly, n: int) -> Tuple[Poly, Poly]:
    """Residuals of the first-order Dunkl form and the second-order form (r2 = 0)."""
    a = -2 * Fraction(r1) + HALF
    y = Poly.x().to_gauss()
    s = S.to_gauss()
    left = (-I / 4) * (2 * y + I * a)
    right = (I / 4) * (2 * y - I * a)
    dunkl = left * s.compose_affine(-1, -I / 2) + right * s.compose_affine(-1, I / 2) - (a / 2) * s
    dunkl = dunkl - lambda_symmetric(r1, 0, n) * s
    second = left * s.shift(I / 2) + right * s.shift(-I / 2) - ((a + n) / 2) * s
    return dunkl, second


def verify_symmetric_difference_eq(r1, r2, n: int) -> VerificationReport:
    """Exact Q(i) checks of the symmetric-case identities for degrees 0..n."""
    r1, r2 = Fraction(r1), Fraction(r2)
    rep = VerificationReport()
    fam = "symmetric-case"
    S = symmetric_stilde(r1, r2, n)
    try:
        Sb = stilde_from_bi(r1, r2, n)
        for k in range(n + 1):
            rep.add("S~ from recurrence = i^-n P_n(ix-1/4)", k, Sb[k] == S[k], Sb[k] - S[k], fam)
    except (ParameterError, InvariantError) as exc:
        rep.add("S~ from recurrence = i^-n P_n(ix-1/4)", None, False, str(exc), fam)
    a, b = -2 * r1 + HALF, -2 * r2 + HALF
    for k in range(n + 1):
        try:
            dh = dual_hahn_3F2(k, a, b)
            rep.add("S~ = dual Hahn 3F2 form", k, dh == S[k], dh - S[k], fam)
        except ParameterError as exc:
            rep.add("S~ = dual Hahn 3F2 form", k, False, str(exc), fam)
        r = symmetric_dunkl_residual(r1, r2, S[k], lambda_symmetric(r1, r2, k))
        rep.add("Dunkl shift equation on the imaginary grid", k, r.is_zero(), r, fam)
        if r2 == 0:
            d, o = meixner_pollaczek_residuals(r1, S[k], k)
            rep.add("Meixner-Pollaczek Dunkl form", k, d.is_zero(), d, fam)
            rep.add("Meixner-Pollaczek second-order difference equation", k, o.is_zero(), o, fam)
            mp = meixner_pollaczek_2F1(k, a)
            rep.add("S~ = Meixner-Pollaczek 2F1 form", k, mp == S[k].to_gauss(), mp - S[k].to_gauss(), fam)
    return rep
