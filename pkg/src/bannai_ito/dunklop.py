"""The Dunkl shift operator L and the Bannai-Ito algebra it generates.

All operators act on :class:`~bannai_ito.polyring.Poly` values and are exact.
With F(x) = (x-rho1)(x-rho2)/(2x) and G(x) = (x-r1+1/2)(x-r2+1/2)/(2x+1),

    L f(x) = F(x) (f(x) - f(-x)) + G(x) (f(-x-1) - f(x)),

and the divisions by 2x and 2x+1 are always exact on polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Union

from .errors import ParameterError
from .numcore import format_rat, rat_sqrt
from .polyring import Poly, RationalFunction
from .report import VerificationReport

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

Operator = Callable[[Poly], Poly]


@dataclass(frozen=True)
class BIParams:
    """The four real parameters (r1, r2, rho1, rho2) of the canonical operator.

    Validated up to ``max_degree``: the eigenvalues must be nonzero and
    pairwise distinct, and g + n must not vanish (recurrence denominators).
    """

    r1: Fraction
    r2: Fraction
    rho1: Fraction
    rho2: Fraction
    max_degree: int = 32

    def __post_init__(self):
        for name in ("r1", "r2", "rho1", "rho2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        self.validate()

    @classmethod
    def unchecked(cls, r1, r2, rho1, rho2, max_degree: int = 0) -> "BIParams":
        """Build without the nondegeneracy scan (used for truncated families past N)."""
        obj = object.__new__(cls)
        for name, v in zip(("r1", "r2", "rho1", "rho2"), (r1, r2, rho1, rho2)):
            object.__setattr__(obj, name, Fraction(v))
        object.__setattr__(obj, "max_degree", max_degree)
        return obj

    def validate(self, horizon: int = None) -> None:
        horizon = self.max_degree if horizon is None else horizon
        g = self.g
        for n in range(1, horizon + 1):
            if g + n == 0:
                raise ParameterError(
                    f"rho1+rho2-r1-r2 = {format_rat(g)} makes g+{n} vanish (recurrence denominator)",
                    condition=f"g+n=0 at n={n} (recurrence-coefficient denominator)",
                )
        lams = [lambda_n(self, n) for n in range(horizon + 1)]
        for n in range(1, horizon + 1):
            if lams[n] == 0:
                raise ParameterError(f"eigenvalue lambda_{n} vanishes", condition=f"lambda_{n}=0")
        seen = {}
        for n, lam in enumerate(lams):
            if lam in seen:
                raise ParameterError(
                    f"eigenvalues lambda_{seen[lam]} and lambda_{n} coincide",
                    condition=f"lambda_{seen[lam]}=lambda_{n} (distinct eigenvalues)",
                )
            seen[lam] = n

    # -- derived constants ------------------------------------------------
    @property
    def g(self) -> Fraction:
        return self.rho1 + self.rho2 - self.r1 - self.r2

    @property
    def kappa(self) -> Fraction:
        return self.g + HALF

    @property
    def omega1(self) -> Fraction:
        return 4 * (self.rho1 * self.rho2 + self.r1 * self.r2)

    @property
    def omega2(self) -> Fraction:
        return 2 * (self.rho1 ** 2 + self.rho2 ** 2 - self.r1 ** 2 - self.r2 ** 2)

    @property
    def omega3(self) -> Fraction:
        return 4 * (self.rho1 * self.rho2 - self.r1 * self.r2)

    @property
    def casimir(self) -> Fraction:
        return 2 * (self.rho1 ** 2 + self.rho2 ** 2 + self.r1 ** 2 + self.r2 ** 2) - QUARTER

    @property
    def F_num(self) -> Poly:
        return Poly.from_roots((self.rho1, self.rho2))

    @property
    def G_num(self) -> Poly:
        return Poly.from_roots((self.r1 - HALF, self.r2 - HALF))

    @property
    def F(self) -> RationalFunction:
        return RationalFunction(self.F_num, Poly.linear(2, 0))

    @property
    def G(self) -> RationalFunction:
        return RationalFunction(self.G_num, Poly.linear(2, 1))

    def swapped_r(self) -> "BIParams":
        return BIParams(self.r2, self.r1, self.rho1, self.rho2, self.max_degree)

    def swapped_rho(self) -> "BIParams":
        return BIParams(self.r1, self.r2, self.rho2, self.rho1, self.max_degree)

    def to_dict(self) -> dict:
        return {k: format_rat(getattr(self, k)) for k in ("r1", "r2", "rho1", "rho2")}


@dataclass(frozen=True)
class GeneralCoeffs:
    """Coefficients of q1 = xi1 x + xi0 and q2 = eta2 x^2 + eta1 x + eta0.

    The general operator has F = (q1+q2)/(2x) and G = q2/(2x+1).
    """

    xi0: Fraction
    xi1: Fraction
    eta0: Fraction
    eta1: Fraction
    eta2: Fraction
    max_degree: int = 32

    def __post_init__(self):
        for name in ("xi0", "xi1", "eta0", "eta1", "eta2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.eta2 == 0:
            raise ParameterError("eta2 = 0: L lowers degree", condition="eta2 != 0 (degree preservation)")
        for N in range(self.max_degree + 1):
            if self.xi1 == self.eta2 * N:
                raise ParameterError(
                    f"xi1 = {N}*eta2: L lowers the degree of x^{2 * N + 1}",
                    condition="xi1 != eta2*N (degree preservation)",
                )

    @property
    def q1(self) -> Poly:
        return Poly((self.xi0, self.xi1))

    @property
    def q2(self) -> Poly:
        return Poly((self.eta0, self.eta1, self.eta2))

    def lambda_n(self, n: int) -> Fraction:
        if n % 2 == 0:
            return self.eta2 * n / 2
        return self.xi1 - self.eta2 * (n - 1) / 2


def _monic_quadratic_roots(b: Fraction, c: Fraction):
    """Rational roots of x^2 + b x + c, sorted, or None."""
    disc = b * b - 4 * c
    s = rat_sqrt(disc)
    if s is None:
        return None
    return sorted(((-b - s) / 2, (-b + s) / 2))


def canonicalize(gc: GeneralCoeffs, max_degree: int = 32) -> BIParams:
    """Normalize eta2 = 1 and factor q2 and q1+q2 over Q.

    q2/eta2 = (x - r1 + 1/2)(x - r2 + 1/2),  (q1+q2)/eta2 = (x - rho1)(x - rho2).
    """
    e2 = gc.eta2
    rs = _monic_quadratic_roots(gc.eta1 / e2, gc.eta0 / e2)
    rhos = _monic_quadratic_roots((gc.xi1 + gc.eta1) / e2, (gc.xi0 + gc.eta0) / e2)
    if rs is None or rhos is None:
        raise ParameterError("q2 or q1+q2 has irrational roots", condition="rational splitting of q2 and q1+q2")
    return BIParams(rs[0] + HALF, rs[1] + HALF, rhos[0], rhos[1], max_degree)


def apply_L_general(gc: GeneralCoeffs, f: Poly) -> Poly:
    d1 = (f - f.reflect()).exact_div_linear(2, 0)
    d2 = (f.compose_neg_shift() - f).exact_div_linear(2, 1)
    return (gc.q1 + gc.q2) * d1 + gc.q2 * d2


# -- the operator L and its eigen-data --------------------------------------

def apply_L(p: BIParams, f: Poly) -> Poly:
    d1 = (f - f.reflect()).exact_div_linear(2, 0)
    d2 = (f.compose_neg_shift() - f).exact_div_linear(2, 1)
    return p.F_num * d1 + p.G_num * d2


def lambda_n(p: BIParams, n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(n, 2)
    return p.r1 + p.r2 - p.rho1 - p.rho2 - Fraction(n + 1, 2)


def nu_n(p: BIParams, n: int) -> Fraction:
    """Subdiagonal entry of L in the phi basis: L phi_n = lambda_n phi_n + nu_n phi_{n-1}."""
    if n < 1:
        raise ValueError("nu_n needs n >= 1")
    h = Fraction(n, 2)
    if n % 2 == 0:
        return h * (p.r1 + p.r2 - h)
    return (p.rho1 - p.r1 + h) * (p.rho2 - p.r1 + h)


def mu_n(p: BIParams, n: int) -> Fraction:
    """Eigenvalue of X = 2L + kappa on P_n: (-1)^n (n + kappa)."""
    return (1 if n % 2 == 0 else -1) * (n + p.kappa)


# -- algebra generators -------------------------------------------------------

def apply_X(p: BIParams, f: Poly) -> Poly:
    return 2 * apply_L(p, f) + p.kappa * f


def apply_Y(p: BIParams, f: Poly) -> Poly:
    return Poly.linear(2, HALF) * f


def apply_Z(p: BIParams, f: Poly) -> Poly:
    """Z = r1 r2/(x+1/2) + rho1 rho2/x - F_num/x R - G_num/(x+1/2) T+R."""
    at_zero = (p.rho1 * p.rho2 * f - p.F_num * f.reflect()).exact_div_linear(1, 0)
    at_half = (p.r1 * p.r2 * f - p.G_num * f.compose_neg_shift()).exact_div_linear(1, HALF)
    return at_zero + at_half


def apply_Jplus(p: BIParams, f: Poly) -> Poly:
    t = apply_X(p, f) - HALF * f
    return apply_Y(p, t) + apply_Z(p, t) - (p.omega2 + p.omega3) / 2 * f


def apply_Jminus(p: BIParams, f: Poly) -> Poly:
    t = apply_X(p, f) + HALF * f
    return apply_Y(p, t) - apply_Z(p, t) + (p.omega2 - p.omega3) / 2 * f


def apply_V(p: BIParams, f: Poly) -> Poly:
    """V = J+(X + 1/2) + J-(X - 1/2)."""
    xf = apply_X(p, f)
    return apply_Jplus(p, xf + HALF * f) + apply_Jminus(p, xf - HALF * f)


def apply_V_alt(p: BIParams, f: Poly) -> Poly:
    """V = 2Y(X^2 - 1/4) - omega3 X - omega2/2."""
    xf = apply_X(p, f)
    x2f = apply_X(p, xf)
    return 2 * apply_Y(p, x2f - QUARTER * f) - p.omega3 * xf - p.omega2 / 2 * f


def jplus_sq_quartic(p: BIParams, m: Fraction) -> Fraction:
    """J+^2 as the quartic in X, evaluated at X = m."""
    s, t = p.rho1 + p.rho2, p.r1 + p.r2
    return ((m + s - HALF) ** 2 - t ** 2) * ((m - s - HALF) ** 2 - t ** 2)


def jminus_sq_quartic(p: BIParams, m: Fraction) -> Fraction:
    d, t = p.rho2 - p.rho1, p.r2 - p.r1
    return ((m + d + HALF) ** 2 - t ** 2) * ((m - d + HALF) ** 2 - t ** 2)


def _apply_poly_in_X(p: BIParams, coeffs: Sequence[Fraction], f: Poly) -> Poly:
    """sum(coeffs[k] X^k) f."""
    out = Poly()
    power = f
    for k, c in enumerate(coeffs):
        if k:
            power = apply_X(p, power)
        out = out + c * power
    return out


def _quartic_coeffs(fn, p: BIParams) -> List[Fraction]:
    """Coefficients of the degree-4 polynomial m -> fn(p, m), by exact interpolation."""
    xs = [Fraction(k) for k in range(5)]
    ys = [fn(p, x) for x in xs]
    out = Poly()
    for i, xi in enumerate(xs):
        basis = Poly.const(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, 1)) / (xi - xj)
        out = out + ys[i] * basis
    return list(out.coeffs)


@dataclass(frozen=True)
class LadderCoeffs:
    n: int
    alpha0: Fraction
    alpha1: Fraction
    beta0: Fraction
    beta1: Fraction


def ladder_coeffs(p: BIParams, n: int) -> LadderCoeffs:
    """Coefficients of J+ P_n and J- P_n in terms of P_{n-1}, P_{n+1}."""
    t, s = p.r1 + p.r2, p.rho1 + p.rho2
    h = Fraction(n, 2)
    d0 = t - s - n
    d1 = s - t + n
    if d0 == 0 or d1 == 0:
        raise ParameterError(f"ladder coefficient denominator vanishes at n={n}", condition="g+n=0")
    alpha0 = 2 * n * (s + h) * (t - h) * (t - s - h) / d0
    alpha1 = 4 * (t - s - n - 1)
    beta0 = -alpha1
    beta1 = 4 * (p.rho1 - p.r1 + h) * (p.rho1 - p.r2 + h) * (p.rho2 - p.r1 + h) * (p.rho2 - p.r2 + h) / d1
    return LadderCoeffs(n, alpha0, alpha1, beta0, beta1)


def verify_algebra(p: BIParams, maxdeg: int = 15) -> VerificationReport:
    """Check the algebra relations on every monomial x^k, k <= maxdeg."""
    rep = VerificationReport()
    w1, w2, w3, Q = p.omega1, p.omega2, p.omega3, p.casimir
    qp = _quartic_coeffs(jplus_sq_quartic, p)
    qm = _quartic_coeffs(jminus_sq_quartic, p)
    fam = "bi-algebra"
    for k in range(maxdeg + 1):
        f = Poly.monomial(k)
        X, Y, Z = apply_X(p, f), apply_Y(p, f), apply_Z(p, f)
        XY, YX = apply_X(p, Y), apply_Y(p, X)
        ZY, YZ = apply_Z(p, Y), apply_Y(p, Z)
        XZ, ZX = apply_X(p, Z), apply_Z(p, X)

        r = XY + YX - Z - w3 * f
        rep.add("{X,Y} = Z + omega3", k, r.is_zero(), r, fam)
        r = ZY + YZ - X - w1 * f
        rep.add("{Z,Y} = X + omega1", k, r.is_zero(), r, fam)
        r = XZ + ZX - Y - w2 * f
        rep.add("{X,Z} = Y + omega2", k, r.is_zero(), r, fam)

        r = apply_X(p, X) + apply_Y(p, Y) + apply_Z(p, Z) - Q * f
        rep.add("X^2+Y^2+Z^2 = Casimir value", k, r.is_zero(), r, fam)

        ok = Z.degree == k + 1 and Z.lead == 2 * (1 if k % 2 else -1)
        rep.add("Z x^k = 2(-1)^(k+1) x^(k+1) + ...", k, ok, str(Z.lead), fam)

        Jp, Jm = apply_Jplus(p, f), apply_Jminus(p, f)
        r = apply_X(p, Jp) + apply_Jplus(p, X) - Jp
        rep.add("{X,J+} = J+", k, r.is_zero(), r, fam)
        r = apply_X(p, Jm) + apply_Jminus(p, X) + Jm
        rep.add("{X,J-} = -J-", k, r.is_zero(), r, fam)

        r = apply_Jplus(p, Jp) - _apply_poly_in_X(p, qp, f)
        rep.add("J+^2 = quartic in X", k, r.is_zero(), r, fam)
        r = apply_Jminus(p, Jm) - _apply_poly_in_X(p, qm, f)
        rep.add("J-^2 = quartic in X", k, r.is_zero(), r, fam)

        r = apply_V(p, f) - apply_V_alt(p, f)
        rep.add("V: ladder form = 2Y(X^2-1/4) - omega3 X - omega2/2", k, r.is_zero(), r, fam)
    return rep


# -- generic triangular eigen-solver ------------------------------------------

def eigen_solve(op: Operator, eigenvalues: Union[Sequence[Fraction], Callable[[int], Fraction]], N: int) -> List[Poly]:
    """Monic eigenpolynomials P_0..P_N of a degree-preserving operator.

    The operator's matrix in the monomial basis is upper triangular; each P_n
    is found by back-substitution.  ``eigenvalues`` may be a sequence or a
    function of n and must match the diagonal of that matrix.
    """
    lam = eigenvalues if callable(eigenvalues) else (lambda n: eigenvalues[n])
    cols = []
    for j in range(N + 1):
        img = op(Poly.monomial(j))
        if img.degree > j:
            raise ValueError(f"operator raises the degree of x^{j}")
        cols.append(img)
    diag = [cols[j].coeff(j) for j in range(N + 1)]
    for n in range(N + 1):
        if diag[n] != lam(n):
            raise ValueError(f"diagonal entry {diag[n]} of x^{n} differs from eigenvalue {lam(n)}")
    out = []
    for n in range(N + 1):
        c = [Fraction(0)] * (n + 1)
        c[n] = Fraction(1)
        for i in range(n - 1, -1, -1):
            gap = lam(n) - diag[i]
            if gap == 0:
                raise ParameterError(f"repeated eigenvalue lambda_{i} = lambda_{n}", condition="distinct eigenvalues")
            acc = sum((cols[j].coeff(i) * c[j] for j in range(i + 1, n + 1)), Fraction(0))
            c[i] = acc / gap
        out.append(Poly(c))
    return out
