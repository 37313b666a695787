"""Limit relations: Askey-Wilson at q -> -1 and the h -> 0 contraction to
Dunkl-type differential operators.

Askey-Wilson data are evaluated in double precision with

    q = -e^eps,  a = -i e^{eps alpha},  b = -i e^{eps beta},  c = i e^{eps gamma},  d = i e^{eps delta},
    alpha = 2 rho1 + 1/2,  beta = 2 rho2 + 1/2,  gamma = -2 r2 + 1/2,  delta = -2 r1 + 1/2,

and z = i e^{-2 eps y}, so z + 1/z = -2i sinh(2 eps y).  Dividing by the
scale s = -4i eps turns the monic AW recurrence in z + 1/z into one in y.

The operator-level identities at the endpoint and the contraction are exact.
"""
from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .bipoly import coeff_A, coeff_C
from .cbi import cbi_v
from .dunklop import HALF, QUARTER, BIParams, apply_L, lambda_n
from .errors import NearSingularError
from .polyring import Poly, RationalFunction
from .report import VerificationReport

SINGULAR_FLOOR = 1e-8


# -- Askey-Wilson recurrence near q = -1 ------------------------------------------

@dataclass(frozen=True)
class AWParams:
    a: complex
    b: complex
    c: complex
    d: complex
    q: complex
    eps: float
    kind: str = "bi"


def aw_params_bi(p: BIParams, eps: float) -> AWParams:
    al, be = float(2 * p.rho1 + HALF), float(2 * p.rho2 + HALF)
    ga, de = float(-2 * p.r2 + HALF), float(-2 * p.r1 + HALF)
    return AWParams(-1j * math.exp(eps * al), -1j * math.exp(eps * be),
                    1j * math.exp(eps * ga), 1j * math.exp(eps * de), -math.exp(eps), eps, "bi")


def aw_params_cbi(p: BIParams, eps: float) -> AWParams:
    """The kernel-polynomial map: a changes sign and rho1 -> rho1 + 1/2; b keeps beta = 2 rho2 + 1/2."""
    al, be = float(2 * p.rho1 + Fraction(3, 2)), float(2 * p.rho2 + HALF)
    ga, de = float(-2 * p.r2 + HALF), float(-2 * p.r1 + HALF)
    return AWParams(1j * math.exp(eps * al), -1j * math.exp(eps * be),
                    1j * math.exp(eps * ga), 1j * math.exp(eps * de), -math.exp(eps), eps, "cbi")


def _guard(v: complex, what: str) -> complex:
    if abs(v) <= SINGULAR_FLOOR:
        raise NearSingularError(f"{what} has modulus {abs(v):.3e} <= {SINGULAR_FLOOR:g}")
    return v


def aw_recurrence(w: AWParams, n: int) -> Tuple[complex, complex]:
    a, b, c, d, q = w.a, w.b, w.c, w.d, w.q
    abcd = a * b * c * d
    dA = _guard(a * (1 - abcd * q ** (2 * n - 1)) * (1 - abcd * q ** (2 * n)), f"A_{n} denominator")
    A = (1 - a * b * q ** n) * (1 - a * c * q ** n) * (1 - a * d * q ** n) * (1 - abcd * q ** (n - 1)) / dA
    if n == 0:
        return A, 0j
    dC = _guard((1 - abcd * q ** (2 * n - 1)) * (1 - abcd * q ** (2 * n - 2)), f"C_{n} denominator")
    C = a * (1 - q ** n) * (1 - b * c * q ** (n - 1)) * (1 - b * d * q ** (n - 1)) * (1 - c * d * q ** (n - 1)) / dC
    return A, C


def y_scale(eps: float) -> complex:
    """Leading-order factor s with z + 1/z = s y + O(eps^3)."""
    return -4j * eps


def scaled_coeffs(w: AWParams, n: int) -> Tuple[complex, complex]:
    """Monic y-variable diagonal b_n and product u_n (u_0 = 0)."""
    s = y_scale(w.eps)
    A, C = aw_recurrence(w, n)
    b = (w.a + 1 / w.a - A - C) / s
    if n == 0:
        return b, 0j
    A_prev, _ = aw_recurrence(w, n - 1)
    return b, A_prev * C / s ** 2


def bi_targets(p: BIParams, n: int) -> Tuple[Fraction, Fraction]:
    """Diagonal 1/4 + rho1 - A_n - C_n and product A_{n-1} C_n (y = x + 1/4)."""
    b = QUARTER + p.rho1 - coeff_A(p, n) - coeff_C(p, n)
    u = coeff_A(p, n - 1) * coeff_C(p, n) if n else Fraction(0)
    return b, u


def cbi_targets(p: BIParams, n: int) -> Tuple[Fraction, Fraction]:
    """Diagonal 1/4 + (-1)^n rho2 and product v_n = A_n C_n of the kernel polynomials."""
    sign = 1 if n % 2 == 0 else -1
    return QUARTER + sign * p.rho2, (cbi_v(p, n) if n else Fraction(0))


@dataclass
class LimitReport:
    kind: str
    params: BIParams
    N: int
    eps: List[float]
    # errors[i][n] = (|b error|, |u error|) at eps[i]
    errors: List[List[Tuple[float, float]]]
    imag: List[float]  # max |Im| of the scaled coefficients at each eps

    def ratios(self) -> Dict[Tuple[int, str], List[float]]:
        """Error ratio between consecutive eps values, per (n, quantity); exact zeros skipped."""
        out = {}
        for n in range(self.N + 1):
            for j, name in enumerate(("b", "u")):
                seq = [e[n][j] for e in self.errors]
                if all(v == 0 for v in seq):
                    continue
                out[(n, name)] = [seq[i + 1] / seq[i] if seq[i] else math.inf for i in range(len(seq) - 1)]
        return out

    def fitted_orders(self) -> Dict[Tuple[int, str], List[float]]:
        out = {}
        for key, rs in self.ratios().items():
            orders = []
            for i, r in enumerate(rs):
                step = math.log(self.eps[i + 1] / self.eps[i])
                orders.append(math.log(r) / step if 0 < r < math.inf else math.nan)
            out[key] = orders
        return out

    def monotone(self) -> bool:
        if len(self.eps) < 2:
            return True
        return all(all(r < 1 for r in rs) for rs in self.ratios().values())

    def ratios_within(self, lo: float, hi: float) -> bool:
        return all(lo <= r <= hi for rs in self.ratios().values() for r in rs)

    def max_error(self) -> float:
        return max(max(max(b, u) for b, u in e) for e in self.errors)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "eps", "n", "b_error", "u_error"])
        for eps, row in zip(self.eps, self.errors):
            for n, (eb, eu) in enumerate(row):
                w.writerow([self.kind, repr(eps), n, f"{eb:.6e}", f"{eu:.6e}"])
        return buf.getvalue()

    def summary(self) -> dict:
        orders = self.fitted_orders()
        flat = [o for os in orders.values() for o in os if not math.isnan(o)]
        return {
            "kind": self.kind,
            "params": self.params.to_dict(),
            "N": self.N,
            "eps": self.eps,
            "max_error": self.max_error(),
            "max_imag": max(self.imag),
            "monotone": self.monotone(),
            "fitted_order_min": round(min(flat), 6) if flat else None,
            "fitted_order_max": round(max(flat), 6) if flat else None,
            "per_decade_ratios": {f"{n}:{q}": [round(r, 6) for r in rs] for (n, q), rs in self.ratios().items()},
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.summary(), **kw)


def _sweep(kind: str, p: BIParams, eps_list, N: int) -> LimitReport:
    if isinstance(eps_list, (int, float)):
        eps_list = [float(eps_list)]
    eps_list = [float(e) for e in eps_list]
    for e in eps_list:
        if not 0 < e <= 0.1:
            raise ValueError(f"eps must lie in (0, 0.1], got {e}")
    make, target = (aw_params_bi, bi_targets) if kind == "bi" else (aw_params_cbi, cbi_targets)
    errors, imag = [], []
    for e in eps_list:
        w = make(p, e)
        row, im = [], 0.0
        for n in range(N + 1):
            b, u = scaled_coeffs(w, n)
            tb, tu = target(p, n)
            row.append((abs(b - float(tb)), abs(u - float(tu))))
            im = max(im, abs(b.imag), abs(u.imag))
        errors.append(row)
        imag.append(im)
    return LimitReport(kind, p, N, eps_list, errors, imag)


def aw_to_bi_limit(p: BIParams, eps, N: int) -> LimitReport:
    return _sweep("bi", p, eps, N)


def aw_to_cbi_limit(p: BIParams, eps, N: int) -> LimitReport:
    return _sweep("cbi", p, eps, N)


def aw_weight_function(w: AWParams, z: complex) -> complex:
    """Omega(z) of the Askey-Wilson difference operator."""
    a, b, c, d, q = w.a, w.b, w.c, w.d, w.q
    den = _guard((1 - z * z) * (1 - q * z * z), "Omega denominator")
    return (1 - a * z) * (1 - b * z) * (1 - c * z) * (1 - d * z) / den


def scaled_operator_coefficients(w: AWParams, y: float) -> Tuple[complex, complex]:
    """Omega(z)/(4(1+q)) and Omega(1/z)/(4(1+q)) at z = i e^{-2 eps y}."""
    z = 1j * cmath.exp(-2 * w.eps * y)
    k = 4 * (1 + w.q)
    return aw_weight_function(w, z) / k, aw_weight_function(w, 1 / z) / k


# -- exact endpoint identities -------------------------------------------------------

def endpoint_phi(p: BIParams) -> Tuple[RationalFunction, RationalFunction]:
    """Limits of Omega(z)/(4(1+q)) and Omega(1/z)/(4(1+q)) as rational functions of y."""
    phi1 = RationalFunction(Poly.from_roots((p.rho1 + QUARTER, p.rho2 + QUARTER)) * (-2), Poly.linear(4, -1))
    phi2 = RationalFunction(Poly.from_roots((p.r1 - QUARTER, p.r2 - QUARTER)) * 2, Poly.linear(4, 1))
    return phi1, phi2


def _exp_series(c: Fraction, order: int) -> List[Fraction]:
    out, term = [], Fraction(1)
    for k in range(order + 1):
        out.append(term)
        term = term * c / (k + 1)
    return out


def _mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    n = min(len(a), len(b))
    return [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)]


def _lead(a: List[Fraction]) -> Tuple[int, Fraction]:
    for k, c in enumerate(a):
        if c != 0:
            return k, c
    raise ZeroDivisionError("series vanishes to the computed order")


def eigenvalue_endpoint(p: BIParams, n: int, order: int = 4) -> Fraction:
    """lim Lambda_n/(4(1+q)) at q = -e^eps, eps -> 0, from exact Taylor coefficients.

    Lambda_n = (q^{-n} - 1)(1 - abcd q^{n-1}) with abcd = e^{eps(2g + 2)}.
    """
    sign = lambda m: 1 if m % 2 == 0 else -1  # noqa: E731
    one = [Fraction(1)] + [Fraction(0)] * order
    q_neg_n = [sign(n) * c for c in _exp_series(Fraction(-n), order)]
    first = [x - y for x, y in zip(q_neg_n, one)]
    abcd_q = [sign(n - 1) * c for c in _exp_series(2 * p.g + 2 + (n - 1), order)]
    second = [x - y for x, y in zip(one, abcd_q)]
    if not any(first):
        return Fraction(0)  # n = 0: Lambda_0 vanishes identically
    num = _mul(first, second)
    den = [4 * (x - y) for x, y in zip(one, _exp_series(Fraction(1), order))]
    kn, cn = _lead(num)
    kd, cd = _lead(den)
    if kn < kd:
        raise ZeroDivisionError("eigenvalue diverges at the endpoint")
    return cn / cd if kn == kd else Fraction(0)


def shift_conjugate(op, h):
    """f -> (op(f(. + h)))(. - h), i.e. T^{-h} op T^{h}."""
    return lambda f: op(f.shift(h)).shift(-h)


def apply_H_symmetric(p: BIParams, f: Poly) -> Poly:
    """Phi1(y)(f(-y+1/2) - f(y)) + Phi2(y)(f(-y-1/2) - f(y))."""
    phi1, phi2 = endpoint_phi(p)
    d1 = (f.compose_affine(-1, HALF) - f).exact_div_linear(4, -1)
    d2 = (f.compose_affine(-1, -HALF) - f).exact_div_linear(4, 1)
    return phi1.num * d1 + phi2.num * d2


def apply_H_minus(p: BIParams, f: Poly) -> Poly:
    """The T^-/R form: Phi1(y-1/4)(f(1-y) - f(y)) + Phi2(y-1/4)(f(-y) - f(y))."""
    phi1, phi2 = endpoint_phi(p)
    p1 = phi1.compose_affine(1, -QUARTER)  # denominator 4y - 2
    p2 = phi2.compose_affine(1, -QUARTER)  # denominator 4y
    d1 = (f.compose_affine(-1, 1) - f).exact_div_linear(4, -2)
    d2 = (f.reflect() - f).exact_div_linear(4, 0)
    return p1.num * d1 + p2.num * d2


def canonical_conjugation_check(p: BIParams, degree: int = 8) -> VerificationReport:
    rep = VerificationReport()
    fam = "endpoint operator identities"
    phi1, phi2 = endpoint_phi(p)
    r = phi1.shift(QUARTER).cross_residual(-p.F)
    rep.add("Phi1(y+1/4) = -F(y)", None, r.is_zero(), r, fam)
    r = phi2.shift(QUARTER).cross_residual(p.G)
    rep.add("Phi2(y+1/4) = G(y)", None, r.is_zero(), r, fam)
    plus = lambda f: apply_L(p, f)  # noqa: E731
    for k in range(degree + 1):
        f = Poly.monomial(k) + Poly.monomial(max(k - 1, 0), Fraction(1, 3))
        r = apply_H_symmetric(p, f) - shift_conjugate(plus, QUARTER)(f)
        rep.add("symmetric form = T^(-1/4) L T^(1/4)", k, r.is_zero(), r, fam)
        r = apply_H_minus(p, f) - shift_conjugate(plus, HALF)(f)
        rep.add("minus form = T^(-1/2) L T^(1/2)", k, r.is_zero(), r, fam)
    for n in range(degree + 1):
        lam = eigenvalue_endpoint(p, n)
        rep.add("lim Lambda_n/(4(1+q)) = lambda_n", n, lam == lambda_n(p, n), f"{lam} vs {lambda_n(p, n)}", fam)
    return rep


# -- contraction to Dunkl-type differential operators ------------------------------------

def _rat(*vals):
    return [Fraction(v) for v in vals]


def apply_L_h(a1, a2, b1, b2, h, f: Poly) -> Poly:
    """The operator in y = h x with r_i = a_i/h, rho_i = a_i/h + b_i."""
    a1, a2, b1, b2, h = _rat(a1, a2, b1, b2, h)
    y = Poly.x()
    odd = (f - f.reflect()).exact_div_linear(2 * h, 0)
    t1 = odd * (y - a1 - b1 * h) * (y - a2 - b2 * h)
    jump = (f.compose_affine(-1, -h) - f).exact_div_linear(2 * h, h * h)
    t2 = jump * (y - a1 + h / 2) * (y - a2 + h / 2)
    return t1 + t2


def big_m1_operator(a1, a2, b1, b2, f: Poly) -> Poly:
    """(y-a1)(y-a2)/(2y) d/dy f(-y) - F(y)/(4y^2) (f(y) - f(-y)).

    F(y) = (2b1+2b2+1) y^2 - 2(a1 b2 + a2 b1) y - a1 a2.
    """
    a1, a2, b1, b2 = _rat(a1, a2, b1, b2)
    y = Poly.x()
    F = Poly((-a1 * a2, -2 * (a1 * b2 + a2 * b1), 2 * b1 + 2 * b2 + 1))
    num = 2 * y * (y - a1) * (y - a2) * (-f.derivative().reflect()) - F * (f - f.reflect())
    return num.exact_div_linear(1, 0).exact_div_linear(1, 0) / 4


def big_m1_normalized(alpha, beta, c, f: Poly) -> Poly:
    """g0(y)(f(-y) - f(y)) + g1(y) d/dy f(-y) with
    g0 = ((alpha+beta+1) y^2 + (c alpha - beta) y + c)/y^2,  g1 = 2(y-1)(y+c)/y."""
    alpha, beta, c = _rat(alpha, beta, c)
    y = Poly.x()
    g0 = Poly((c, c * alpha - beta, alpha + beta + 1))
    num = g0 * (f.reflect() - f) + 2 * y * (y - 1) * (y + c) * (-f.derivative().reflect())
    return num.exact_div_linear(1, 0).exact_div_linear(1, 0)


def little_m1_operator(alpha, beta, f: Poly) -> Poly:
    """2(1-y) d/dy f(-y) + (alpha+beta+1 - alpha/y)(f(y) - f(-y))."""
    alpha, beta = _rat(alpha, beta)
    y = Poly.x()
    diff = f - f.reflect()
    return 2 * (1 - y) * (-f.derivative().reflect()) + (alpha + beta + 1) * diff - alpha * diff.exact_div_linear(1, 0)


def bi_to_jacobi_contraction(a1, a2, b1, b2, h, k: int) -> Poly:
    """(L_h - L_0) y^k, exact at the given h."""
    f = Poly.monomial(k)
    return apply_L_h(a1, a2, b1, b2, h, f) - big_m1_operator(a1, a2, b1, b2, f)


@dataclass
class ContractionReport:
    params: Tuple[Fraction, Fraction, Fraction, Fraction]
    hs: List[Fraction]
    # residual coefficients: coeffs[k][i][j] = coefficient of y^j in (L_h - L_0) y^k at hs[i]
    coeffs: Dict[int, List[List[Fraction]]] = field(default_factory=dict)

    def ratios(self) -> Dict[Tuple[int, int], List[float]]:
        out = {}
        for k, per_h in self.coeffs.items():
            width = max(len(c) for c in per_h)
            for j in range(width):
                seq = [c[j] if j < len(c) else Fraction(0) for c in per_h]
                if all(v == 0 for v in seq):
                    continue
                out[(k, j)] = [float(seq[i + 1] / seq[i]) if seq[i] else math.inf for i in range(len(seq) - 1)]
        return out

    def norm_ratios(self) -> Dict[int, List[float]]:
        """Ratio of the largest |coefficient| between consecutive h."""
        out = {}
        for k, per_h in self.coeffs.items():
            norms = [max((abs(c) for c in cs), default=Fraction(0)) for cs in per_h]
            if all(v == 0 for v in norms):
                continue
            out[k] = [float(norms[i + 1] / norms[i]) for i in range(len(norms) - 1)]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "k", "j", "coefficient"])
        for k, per_h in sorted(self.coeffs.items()):
            for h, cs in zip(self.hs, per_h):
                for j, c in enumerate(cs):
                    w.writerow([str(h), k, j, f"{float(c):.6e}"])
        return buf.getvalue()

    def summary(self) -> dict:
        rs = self.ratios()
        flat = [r for v in rs.values() for r in v]
        return {
            "params": {n: str(v) for n, v in zip(("a1", "a2", "b1", "b2"), self.params)},
            "h": [str(h) for h in self.hs],
            "min_ratio": min(flat) if flat else None,
            "max_ratio": max(flat) if flat else None,
            "norm_ratios": {str(k): [round(r, 6) for r in v] for k, v in self.norm_ratios().items()},
            "coefficient_ratios": {f"{k}:{j}": [round(r, 6) for r in v] for (k, j), v in rs.items()},
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.summary(), **kw)


def contraction_sweep(a1, a2, b1, b2, hs: Sequence, kmax: int) -> ContractionReport:
    hs = [Fraction(h) for h in hs]
    rep = ContractionReport(tuple(_rat(a1, a2, b1, b2)), hs)
    for k in range(kmax + 1):
        rep.coeffs[k] = [list(bi_to_jacobi_contraction(a1, a2, b1, b2, h, k).coeffs) for h in hs]
    return rep
