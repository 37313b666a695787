"""Bannai-Ito grids, the tridiagonal form of Dunkl shift operators on them, and
exact finite orthogonality for the truncated families.

On a grid of the first kind, x_s = -1/4 + (-1)^s (1/4 + a + s/2), the points
-x_s and -1 - x_s are neighbours of x_s, so any operator A(x)R + B(x)T^+R + C(x)
acts on grid values as a three-term (Jacobi) matrix.  Second-kind grids
x_s = -1/4 + (-1)^s (1/4 + b - s/2) swap the roles of A and B.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

from .bipoly import RecurrenceTable, associated_polys, generate_from_table, recurrence_coeffs
from .dunklop import HALF, QUARTER, BIParams, lambda_n
from .errors import InvariantError, ParameterError, PoleError
from .numcore import format_rat, lgamma_signed
from .polyring import Poly
from .report import VerificationReport

FIRST, SECOND = "first", "second"


def grid_point(kind: str, offset, s: int) -> Fraction:
    sign = 1 if s % 2 == 0 else -1
    if kind == FIRST:
        return -QUARTER + sign * (QUARTER + offset + Fraction(s, 2))
    if kind == SECOND:
        return -QUARTER + sign * (QUARTER + offset - Fraction(s, 2))
    raise ValueError(f"unknown grid kind {kind!r}")


@dataclass(frozen=True)
class BIGrid:
    kind: str
    offset: Fraction
    count: int

    def __getitem__(self, s: int) -> Fraction:
        # any integer index is allowed; neighbours outside 0..count-1 are still grid points
        return grid_point(self.kind, self.offset, s)

    @property
    def points(self) -> List[Fraction]:
        return [self[s] for s in range(self.count)]


def bi_grid(kind: str, offset, count: int) -> BIGrid:
    if kind not in (FIRST, SECOND):
        raise ValueError(f"unknown grid kind {kind!r}")
    return BIGrid(kind, Fraction(offset), count)


def grid_relations_hold(grid: BIGrid, lo: int = -2, hi: int = None) -> bool:
    """Defining reflection pair and x_{s+1} + x_{s-1} + 2x_s + 1 = 0 on s in [lo, hi]."""
    hi = grid.count if hi is None else hi
    for s in range(lo, hi + 1):
        if grid[s + 1] + grid[s - 1] + 2 * grid[s] + 1 != 0:
            return False
        if s % 2 == 0:
            if grid.kind == FIRST:
                ok = -grid[s] == grid[s - 1] and -1 - grid[s] == grid[s + 1]
            else:
                ok = -grid[s] == grid[s + 1] and -1 - grid[s] == grid[s - 1]
            if not ok:
                return False
    return True


# -- tridiagonal form --------------------------------------------------------------

@dataclass
class TridiagonalView:
    """H f(x_s) = xi_s f(x_{s+1}) + eta_s f(x_s) + zeta_s f(x_{s-1})."""

    grid: BIGrid
    xi: List[Fraction]
    eta: List[Fraction]
    zeta: List[Fraction]

    def apply(self, f: Callable) -> List[Fraction]:
        g = self.grid
        return [self.xi[s] * f(g[s + 1]) + self.eta[s] * f(g[s]) + self.zeta[s] * f(g[s - 1])
                for s in range(g.count)]

    def is_symmetric(self) -> bool:
        return all(self.xi[s] == self.zeta[s + 1] for s in range(self.grid.count - 1))


Coefficient = Callable[[Fraction], Fraction]


def _entries(A: Coefficient, B: Coefficient, C: Coefficient, grid: BIGrid, s: int):
    x = grid[s]
    a, b, c = A(x), B(x), C(x)
    if (grid.kind == FIRST) == (s % 2 == 0):
        return b, c, a
    return a, c, b


def tridiagonalize(A: Coefficient, B: Coefficient, C: Coefficient, grid: BIGrid) -> TridiagonalView:
    """Matrix entries of A(x)R + B(x)T^+R + C(x) on the grid; poles raise PoleError."""
    xi, eta, zeta = [], [], []
    for s in range(grid.count):
        a, b, c = _entries(A, B, C, grid, s)
        xi.append(a)
        eta.append(b)
        zeta.append(c)
    return TridiagonalView(grid, xi, eta, zeta)


def bi_operator_data(p: BIParams):
    """(A, B, C) = (-F, G, F - G) for the canonical operator L."""
    return -p.F, p.G, p.F - p.G


def leonard_residuals(p: BIParams, grid: BIGrid, P: Sequence[Poly]) -> List[List[Fraction]]:
    """xi_s P_n(x_{s+1}) + eta_s P_n(x_s) + zeta_s P_n(x_{s-1}) - lambda_n P_n(x_s), per n then s.

    Grid points where A, B or C has a pole are skipped.
    """
    A, B, C = bi_operator_data(p)
    out = []
    for n, Pn in enumerate(P):
        lam = lambda_n(p, n)
        row = []
        for s in range(grid.count):
            try:
                xi, eta, zeta = _entries(A, B, C, grid, s)
            except PoleError:
                continue
            lhs = xi * Pn(grid[s + 1]) + eta * Pn(grid[s]) + zeta * Pn(grid[s - 1])
            row.append(lhs - lam * Pn(grid[s]))
        out.append(row)
    return out


# -- nodes, weights, orthogonality --------------------------------------------------

def node_grid(p: BIParams, N: int) -> BIGrid:
    """Grid carrying the spectrum of the N-truncated family.

    Even N (2(r2 - rho2) = N + 1): first kind with a = rho2.
    Odd N (r1 + r2 = (N + 1)/2): second kind with b = r1 - 1/2.
    """
    if N % 2 == 0:
        return bi_grid(FIRST, p.rho2, N + 1)
    return bi_grid(SECOND, p.r1 - HALF, N + 1)


def spectral_nodes(p: BIParams, N: int, P: Sequence[Poly] = None) -> List[Fraction]:
    nodes = node_grid(p, N).points
    if P is None:
        t = recurrence_coeffs(p, N)
        P = generate_from_table(t.b, t.u, N + 1)
    for s, x in enumerate(nodes):
        if P[N + 1](x) != 0:
            raise InvariantError(f"closed-form node x_{s} = {format_rat(x)} is not a root of P_{N + 1}")
    if len(set(nodes)) != len(nodes):
        raise InvariantError("closed-form nodes are not distinct")
    return nodes


@dataclass
class OrthoSystem:
    params: BIParams
    N: int
    nodes: List[Fraction]
    weights: List[Fraction]
    norms: List[Fraction]
    max_residual: Fraction = Fraction(0)

    @property
    def positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "x_s", "w_s"])
        for s, (x, wt) in enumerate(zip(self.nodes, self.weights)):
            w.writerow([s, format_rat(x), format_rat(wt)])
        return buf.getvalue()

    def certificate(self) -> dict:
        return {
            "N": self.N,
            "params": self.params.to_dict(),
            "nodes": [format_rat(x) for x in self.nodes],
            "weights": [format_rat(x) for x in self.weights],
            "norms": [format_rat(x) for x in self.norms],
            "max_abs_residual": format_rat(abs(self.max_residual)),
            "positivity": self.positive,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.certificate(), **kw)


def gram_residuals(P: Sequence[Poly], nodes, weights, norms, N: int) -> List[List[Fraction]]:
    """sum_s w_s P_n(x_s) P_m(x_s) - delta_{nm} h_n for n, m <= N."""
    vals = [[Pn(x) for x in nodes] for Pn in P[: N + 1]]
    out = []
    for n in range(N + 1):
        row = []
        for m in range(N + 1):
            s = sum((w * a * b for w, a, b in zip(weights, vals[n], vals[m])), Fraction(0))
            row.append(s - (norms[n] if n == m else 0))
        out.append(row)
    return out


def weights_from_table(t: RecurrenceTable, nodes: Sequence[Fraction], P: Sequence[Poly]) -> List[Fraction]:
    N = t.N
    dP = P[N + 1].derivative()
    out = []
    for s, x in enumerate(nodes):
        d = P[N](x) * dP(x)
        if d == 0:
            raise InvariantError(f"P_N(x_{s}) P'_(N+1)(x_{s}) = 0; node is not a simple root")
        out.append(t.h[N] / d)
    return out


def exact_weights(p: BIParams, N: int) -> OrthoSystem:
    """Nodes, weights and norms of the N-truncated family, with every invariant checked."""
    t = recurrence_coeffs(p, N)
    bad = next((n for n in range(1, N + 1) if t.u[n] <= 0), None)
    if bad is not None:
        raise ParameterError(f"u_{bad} <= 0: family is not positive definite up to N", condition=f"u_{bad}>0")
    if t.u[N + 1] != 0:
        raise ParameterError(f"u_{N + 1} != 0: parameters are not truncated at N", condition="u_(N+1)=0")
    P = generate_from_table(t.b, t.u, N + 1)
    nodes = spectral_nodes(p, N, P)
    w = weights_from_table(t, nodes, P)
    Q = associated_polys(t, N)
    dP = P[N + 1].derivative()
    for s, x in enumerate(nodes):
        if Q[N](x) / dP(x) != w[s]:
            raise InvariantError(f"associated-polynomial weight differs at s={s}")
    if not all(v > 0 for v in w):
        raise InvariantError("a weight is not positive")
    res = gram_residuals(P, nodes, w, t.h, N)
    worst = max((abs(r) for row in res for r in row), default=Fraction(0))
    if worst != 0:
        raise InvariantError(f"discrete orthogonality residual {worst}")
    return OrthoSystem(p, N, nodes, w, t.h[: N + 1], worst)


def verify_orthogonality(t: RecurrenceTable, nodes: Sequence[Fraction]) -> VerificationReport:
    """Report-style checks for a (possibly externally modified) recurrence table."""
    rep = VerificationReport()
    fam = "finite orthogonality"
    N = t.N
    P = generate_from_table(t.b, t.u, N + 1)
    for s, x in enumerate(nodes):
        v = P[N + 1](x)
        rep.add("orthogonality: node is a root of P_(N+1)", s, v == 0, format_rat(v), fam)
    try:
        w = weights_from_table(t, nodes, P)
    except InvariantError as exc:
        rep.add("orthogonality: weights defined", N, False, str(exc), fam)
        return rep
    rep.add("orthogonality: weights positive", N, all(v > 0 for v in w), [format_rat(v) for v in w], fam)
    res = gram_residuals(P, nodes, w, t.h, N)
    for n in range(N + 1):
        worst = max(abs(r) for r in res[n])
        rep.add("discrete orthogonality sum_s w_s P_n P_m = delta h_n", n, worst == 0, format_rat(worst), fam)
    return rep


# -- symmetry factor (floating point cross-check) ------------------------------------

def _gl(x: float):
    return lgamma_signed(x)


def symmetry_factor(x: float, p: BIParams, form: str = "phi_expr") -> float:
    """phi(x) with the periodic factor sigma(x) = sin(2 pi x).

    ``phi_expr`` suits the even-N spectra (its gamma arguments stay off the
    poles there), ``phi_sym`` the odd-N ones.
    """
    r1, r2, s1, s2 = (float(v) for v in (p.r1, p.r2, p.rho1, p.rho2))
    x = float(x)
    sigma = math.sin(2 * math.pi * x)
    if form == "phi_expr":
        num = _gl(s1 - x) * _gl(x - r1 + 0.5) * _gl(-x - r1 + 0.5) * _gl(x + 1 + s1)
        den = _gl(x + 1 - s2) * _gl(x + r2 + 0.5) * _gl(r2 + 0.5 - x) * _gl(-x - s2)
        return -2 * sigma * (num / den).value
    if form == "phi_sym":
        num = _gl(s1 - x) * _gl(s1 + 1 + x) * _gl(s2 - x) * _gl(1 + s2 + x)
        den = _gl(r2 + 0.5 + x) * _gl(r2 + 0.5 - x) * _gl(r1 + 0.5 + x) * _gl(r1 + 0.5 - x)
        return sigma * (num / den).value
    raise ValueError(f"unknown symmetry-factor form {form!r}")


def symmetry_condition_ratios(p: BIParams, form: str, xs: Sequence[float]):
    """For each x: phi(-x)F(-x)/(phi(x)F(x)) and phi(-x-1)G(-x-1)/(phi(x)G(x)); both should be 1."""
    r1, r2, s1, s2 = (float(v) for v in (p.r1, p.r2, p.rho1, p.rho2))

    def F(x):
        return (x - s1) * (x - s2) / (2 * x)

    def G(x):
        return (x - r1 + 0.5) * (x - r2 + 0.5) / (2 * x + 1)

    out = []
    for x in xs:
        phi = symmetry_factor(x, p, form)
        out.append((symmetry_factor(-x, p, form) * F(-x) / (phi * F(x)),
                    symmetry_factor(-x - 1, p, form) * G(-x - 1) / (phi * G(x))))
    return out


def weight_factor_ratios(osys: OrthoSystem, form: str = None) -> List[float]:
    """w_s/phi(x_s) normalised by the s = 0 value; constant 1 when the weights follow phi."""
    form = form or ("phi_expr" if osys.N % 2 == 0 else "phi_sym")
    raw = [float(w) / symmetry_factor(float(x), osys.params, form) for x, w in zip(osys.nodes, osys.weights)]
    return [r / raw[0] for r in raw]
