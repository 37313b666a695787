from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bannai_ito import BIParams, ParameterError, Poly, apply_L, lambda_n
from bannai_ito.dunklop import (
    GeneralCoeffs, apply_L_general, apply_Jminus, canonicalize, eigen_solve, ladder_coeffs,
    mu_n, nu_n, verify_algebra,
)
from conftest import REF, bi_params, rationals


def pointwise_L(p, f, x):
    """Direct evaluation of F (f(x) - f(-x)) + G (f(-x-1) - f(x)) at a non-pole x."""
    F = (x - p.rho1) * (x - p.rho2) / (2 * x)
    G = (x - p.r1 + Fraction(1, 2)) * (x - p.r2 + Fraction(1, 2)) / (2 * x + 1)
    return F * (f(x) - f(-x)) + G * (f(-x - 1) - f(x))


@given(bi_params(), st.lists(rationals, min_size=1, max_size=8))
def test_apply_L_matches_pointwise_definition(p, coeffs):
    f = Poly(coeffs)
    Lf = apply_L(p, f)
    for x in (Fraction(2, 3), Fraction(-5, 7), Fraction(11, 5)):
        assert Lf(x) == pointwise_L(p, f, x)


@given(bi_params(), st.integers(0, 14))
def test_L_preserves_degree_with_eigenvalue_diagonal(p, k):
    img = apply_L(p, Poly.monomial(k))
    assert img.degree <= k
    assert img.coeff(k) == lambda_n(p, k)


def test_reference_eigenvalues():
    p = BIParams(*REF)
    # g = rho1 + rho2 - r1 - r2 = -461/420
    assert p.g == Fraction(-461, 420)
    assert [lambda_n(p, n) for n in range(4)] == [0, Fraction(41, 420), 1, Fraction(-379, 420)]
    assert mu_n(p, 1) == -(1 + p.kappa)


def test_degenerate_parameters_rejected():
    with pytest.raises(ParameterError) as exc:
        BIParams(0, 1, 0, 0)
    assert "g+n=0" in exc.value.condition
    # an odd eigenvalue can only meet an even one when g is a negative integer,
    # which the g+n check already excludes
    with pytest.raises(ParameterError) as exc:
        BIParams(1, 2, 0, 0)
    assert "g+n=0 at n=3" in exc.value.condition
    BIParams(1, 2, 0, 0, max_degree=2)


@given(bi_params())
def test_parameter_symmetries_leave_L_unchanged(p):
    f = Poly((1, -2, Fraction(1, 3), 5, 0, 1))
    assert apply_L(p.swapped_r(), f) == apply_L(p, f)
    assert apply_L(p.swapped_rho(), f) == apply_L(p, f)


def test_general_form_canonicalizes():
    # q2 = (x - r1 + 1/2)(x - r2 + 1/2), q1 + q2 = (x - rho1)(x - rho2), scaled by 3
    p = BIParams(*REF)
    q2 = Poly.from_roots((p.r1 - Fraction(1, 2), p.r2 - Fraction(1, 2))) * 3
    q12 = Poly.from_roots((p.rho1, p.rho2)) * 3
    q1 = q12 - q2
    gc = GeneralCoeffs(q1.coeff(0), q1.coeff(1), q2.coeff(0), q2.coeff(1), q2.coeff(2))
    c = canonicalize(gc)
    assert {c.r1, c.r2} == {p.r1, p.r2} and {c.rho1, c.rho2} == {p.rho1, p.rho2}
    f = Poly((0, 1, 2, 3))
    assert apply_L_general(gc, f) == apply_L(p, f) * 3


def test_general_form_degree_condition():
    with pytest.raises(ParameterError):
        GeneralCoeffs(0, 2, 0, 0, 1)  # xi1 = 2 eta2


def test_eigen_solve_on_reference():
    p = BIParams(*REF)
    P = eigen_solve(lambda f: apply_L(p, f), lambda n: lambda_n(p, n), 6)
    for n, Pn in enumerate(P):
        assert Pn.lead == 1 and Pn.degree == n
        assert apply_L(p, Pn) == lambda_n(p, n) * Pn


def test_nu_matches_phi_action():
    from bannai_ito.polyring import phi_basis
    p = BIParams(*REF)
    for n in range(1, 8):
        r = apply_L(p, phi_basis(n, p.r1)) - lambda_n(p, n) * phi_basis(n, p.r1)
        assert r == nu_n(p, n) * phi_basis(n - 1, p.r1)


def test_algebra_relations_reference():
    rep = verify_algebra(BIParams(*REF), 10)
    assert rep.ok and len(rep) == 11 * 10


@given(bi_params(horizon=8))
def test_algebra_relations_random(p):
    assert verify_algebra(p, 5).ok


def test_ladder_sign_relation():
    p = BIParams(*REF)
    for n in range(1, 9):
        c = ladder_coeffs(p, n)
        assert c.beta0 == -c.alpha1
    # J- raises P_0 to a multiple of P_1
    assert apply_Jminus(p, Poly.const(1)).degree == 1
