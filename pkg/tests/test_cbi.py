from fractions import Fraction

import pytest
from hypothesis import assume, given

from bannai_ito import BIParams, ParameterError, Poly
from bannai_ito.certificate import check_cbi
from bannai_ito.bipoly import coeff_C, generate_P, recurrence_coeffs
from bannai_ito.cbi import (
    cbi_recurrence_residuals, cbi_table, christoffel, dual_hahn_3F2, geronimus_reconstruct,
    meixner_pollaczek_2F1, split_UV, stilde_from_bi, symmetric_stilde, u_tilde,
    verify_symmetric_difference_eq, wilson_4F3,
)
from bannai_ito.errors import ExactDivisionError
from bannai_ito.numcore import GaussRat
from conftest import REF, bi_params


def test_kernel_polynomials_from_values_match_closed_multipliers():
    p = BIParams(*REF)
    P = generate_P(p, 9)
    t = cbi_table(p, 8)
    assert christoffel(P, p.rho1) == t.W
    assert all(w.lead == 1 and w.degree == n for n, w in enumerate(t.W))


def test_wrong_multiplier_is_detected():
    p = BIParams(*REF)
    P = generate_P(p, 3)
    A = [Fraction(1)] * 3
    with pytest.raises(ExactDivisionError):
        christoffel(P, p.rho1, A)


def test_kernel_recurrence_and_reconstruction():
    p = BIParams(*REF)
    t = cbi_table(p, 12)
    assert all(r.is_zero() for r in cbi_recurrence_residuals(t))
    C = [coeff_C(p, n) for n in range(13)]
    assert geronimus_reconstruct(t.W, C) == generate_P(p, 12)


def test_kernel_diagonal_reference():
    # W_1 = x - rho2 exactly (diagonal of the kernel recurrence at n = 0 is rho2)
    t = cbi_table(BIParams(*REF), 2)
    assert t.W[1] == Poly.x() - Fraction(2, 7)


@given(bi_params(horizon=10))
def test_kernel_chain_random(p):
    P = generate_P(p, 9)
    assume(all(P[n](p.rho1) != 0 for n in range(9)))
    t = cbi_table(p, 8)
    assert all(r.is_zero() for r in cbi_recurrence_residuals(t))
    U, V = split_UV(t.W, p.rho2)
    for kind, polys in (("U", U), ("V", V)):
        for n, q in enumerate(polys):
            try:
                w = wilson_4F3(kind, n, p)
            except ParameterError:
                continue  # a lower 4F3 parameter is a nonpositive integer
            assert q == w


def test_wilson_degenerate_lower_parameter():
    # rho2 - r1 + 1/2 = 0 makes a lower parameter of the U series vanish
    p = BIParams(0, 0, 0, Fraction(-1, 2))
    with pytest.raises(ParameterError):
        wilson_4F3("U", 1, p)
    assert check_cbi(p, 6).ok


def test_wilson_split_reference():
    p = BIParams(*REF)
    t = cbi_table(p, 12)
    U, V = split_UV(t.W, p.rho2)
    assert len(U) == 7 and len(V) == 6
    assert all(U[n] == wilson_4F3("U", n, p) for n in range(7))
    assert all(V[n] == wilson_4F3("V", n, p) for n in range(6))
    assert all(w.is_even() for w in t.W[::2])


@pytest.mark.parametrize("r1,r2", [(Fraction(1, 7), Fraction(-1, 3)), (Fraction(2, 5), Fraction(3, 4))])
def test_symmetric_diagonal_is_constant(r1, r2):
    t = recurrence_coeffs(BIParams(r1, r2, -r1, -r2), 10)
    assert all(b == Fraction(-1, 4) for b in t.b)


def test_symmetric_family_three_ways():
    r1, r2 = Fraction(1, 7), Fraction(-1, 3)
    S = symmetric_stilde(r1, r2, 10)
    assert stilde_from_bi(r1, r2, 10) == S
    a, b = -2 * r1 + Fraction(1, 2), -2 * r2 + Fraction(1, 2)
    assert all(dual_hahn_3F2(n, a, b) == S[n] for n in range(11))


def test_u_tilde_reference():
    # u~_1 = (1 - 4 r1)(1 - 4 r2)/16 with r1 = 1/7, r2 = -1/3
    assert u_tilde(Fraction(1, 7), Fraction(-1, 3), 1) == Fraction(3, 7) * Fraction(7, 3) / 16


def test_meixner_pollaczek_reference():
    r1 = Fraction(1, 7)
    a = -2 * r1 + Fraction(1, 2)
    S = symmetric_stilde(r1, 0, 6)
    for n in range(7):
        assert meixner_pollaczek_2F1(n, a) == S[n].to_gauss()
    # degree-one value: S~_1 = x
    assert meixner_pollaczek_2F1(1, a) == Poly.x().to_gauss() + GaussRat(0)


@pytest.mark.parametrize("r2", [Fraction(-1, 3), Fraction(0)])
def test_symmetric_difference_equations(r2):
    rep = verify_symmetric_difference_eq(Fraction(1, 7), r2, 10)
    assert rep.ok, rep.failures()[:3]
