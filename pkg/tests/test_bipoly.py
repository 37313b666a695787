from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bannai_ito import BIParams, ParameterError, Poly, apply_L, lambda_n
from bannai_ito.bipoly import (
    associated_polys, b_closed, coeff_A, coeff_C, expansion_closed, expansion_coeffs, generate_P,
    hypergeometric_balance, hypergeometric_form, positivity_scan, recurrence_coeffs, truncated_u_even,
    truncated_u_odd, truncation_even, truncation_odd, u_closed,
)
from bannai_ito.dunklop import eigen_solve
from conftest import REF, bi_params

# frozen from an independent run (triangular eigen-solve, then reading off the
# recurrence); A_0 and b_0 also checked by hand:
# A_0 = (11/15)(-11/10) / (4 (1 + g)), 1 + g = -41/420  ->  847/410
FROZEN_REF = {
    "A": ["847/410", "-2132/13265", "2583/7990", "32973/42665", "14413/16390"],
    "C": ["0", "-1235/574", "245/379", "-4575/11186", "-350/1219"],
    "b": ["-153/82", "78077/31078", "-466173/605642", "-319157/1947962", "-1567413/3995882"],
    "u": ["0", "-29887/6724", "-14924/143641", "-337635/2553604", "-329730/1485961"],
}


def recurrence_from_polys(P):
    """Read b_n, u_n back off a list of monic polynomials (independent of the closed forms)."""
    x = Poly.x()
    b, u = [], [Fraction(0)]
    for n in range(len(P) - 1):
        r = x * P[n] - P[n + 1]  # = b_n P_n + u_n P_(n-1)
        b.append(r.coeff(n))
        if n:
            u.append((r - b[n] * P[n]).coeff(n - 1))
    return b, u


def test_reference_table_frozen():
    t = recurrence_coeffs(BIParams(*REF), 4)
    d = t.to_dict()
    for key, vals in FROZEN_REF.items():
        assert d[key][:5] == vals


def test_reference_table_from_independent_oracle():
    p = BIParams(*REF)
    P = eigen_solve(lambda f: apply_L(p, f), lambda n: lambda_n(p, n), 9)
    b, u = recurrence_from_polys(P)
    t = recurrence_coeffs(p, 8)
    assert t.b[:8] == b[:8]
    assert t.u[1:8] == u[1:8]


@given(bi_params(horizon=10))
def test_closed_forms_agree(p):
    for n in range(8):
        if n or p.g != 0:
            assert p.rho1 - coeff_A(p, n) - coeff_C(p, n) == b_closed(p, n)
        if n:
            assert coeff_A(p, n - 1) * coeff_C(p, n) == u_closed(p, n)


@given(bi_params(horizon=10))
def test_A_is_value_ratio_at_rho1(p):
    P = generate_P(p, 8)
    for n in range(8):
        if P[n](p.rho1) != 0:
            assert P[n + 1](p.rho1) / P[n](p.rho1) == coeff_A(p, n)


@given(bi_params(horizon=10), st.integers(0, 9))
def test_expansion_agrees_with_recurrence(p, n):
    try:
        ex = expansion_coeffs(p, n)
    except ParameterError:
        return
    assert ex.coeffs == expansion_closed(p, n)
    assert ex.monic_poly() == generate_P(p, n)[n]


def test_hypergeometric_form_and_balance():
    p = BIParams(*REF)
    P = generate_P(p, 9)
    for n in range(10):
        assert hypergeometric_form(p, n) * expansion_coeffs(p, n).a_n0 == P[n]
        assert all(b.is_zero() for b in hypergeometric_balance(p, n))


def test_C0_and_csv_shape():
    t = recurrence_coeffs(BIParams(*REF), 6)
    assert t.C[0] == 0
    lines = t.to_csv().strip().split("\n")
    assert lines[0] == "n,A,C,b,u,h" and len(lines) == 1 + 7


def test_g_plus_n_zero_is_reported():
    p = BIParams.unchecked(0, 1, 0, 0)
    with pytest.raises(ParameterError) as exc:
        coeff_A(p, 0)
    assert "g+n=0" in exc.value.condition


@pytest.mark.parametrize("N", [2, 4, 6, 8])
def test_even_truncation(N):
    args = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
    q = truncation_even(*args, N)
    assert 2 * (q.r2 - q.rho2) == N + 1
    t = recurrence_coeffs(q, N)
    assert t.u[N + 1] == 0
    assert positivity_scan(t) == N + 1
    assert all(t.u[n] == truncated_u_even(*args, N, n) for n in range(1, N + 2))


@pytest.mark.parametrize("N", [3, 5, 7])
def test_odd_truncation(N):
    args = (Fraction(1, 3), Fraction(1, 5), Fraction(9, 7))
    q = truncation_odd(*args, N)
    assert q.r1 + q.r2 == Fraction(N + 1, 2)
    t = recurrence_coeffs(q, N)
    assert positivity_scan(t) == N + 1
    assert all(t.u[n] == truncated_u_odd(*args, N, n) for n in range(1, N + 2))


def test_odd_truncation_needs_xi_above_zeta():
    with pytest.raises(ParameterError):
        truncation_odd(Fraction(1, 2), Fraction(1, 5), Fraction(1, 3), 5)


def test_associated_polynomials_shift():
    t = recurrence_coeffs(BIParams(*REF), 6)
    Q = associated_polys(t, 5)
    assert Q[1] == Poly.x() - t.b[1]
    assert all(Q[n].degree == n for n in range(6))


def test_g_zero_removable_point():
    # rho1 + rho2 = r1 + r2 makes the diagonal closed form singular at n = 0 only
    p = BIParams(0, 0, 0, 0)
    t = recurrence_coeffs(p, 6)
    P = generate_P(t, 6)
    assert all(apply_L(p, P[n]) == lambda_n(p, n) * P[n] for n in range(7))
