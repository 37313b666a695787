from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bannai_ito.errors import ExactDivisionError, PoleError
from bannai_ito.numcore import GaussRat, I
from bannai_ito.polyring import Poly, RationalFunction, newton_node, phi_basis, phi_leading_sign
from conftest import rationals

polys = st.lists(rationals, max_size=7).map(Poly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly.zero()


@given(polys, polys, rationals)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, rationals)
def test_reflection_and_shift_involutions(p, h):
    assert p.reflect().reflect() == p
    assert p.shift(h).shift(-h) == p
    assert p.compose_neg_shift().compose_neg_shift() == p


@given(polys, rationals, rationals)
def test_compose_affine_pointwise(p, a, b):
    x = Fraction(3, 7)
    assert p.compose_affine(a, b)(x) == p(a * x + b)


@given(polys, rationals)
def test_exact_division_by_linear_factor(p, root):
    prod = p * Poly.linear(1, -root)
    assert prod.exact_div_root(root) == p
    assert prod.exact_div_linear(1, -root) == p


def test_inexact_division_raises():
    with pytest.raises(ExactDivisionError):
        Poly((1, 0, 1)).exact_div_root(Fraction(1))


@given(polys)
def test_derivative_is_linear_and_lowers_degree(p):
    assert (p + p).derivative() == p.derivative() * 2
    if p.degree > 0:
        assert p.derivative().degree == p.degree - 1


def test_even_odd_square_decomposition():
    q = Poly((Fraction(1, 2), 0, 3, 0, 1))
    assert q.is_even() and not q.is_odd()
    assert q.in_square().of_square() == q


def test_gaussian_coefficients():
    p = Poly.x().to_gauss() * I + GaussRat(1)
    assert not p.is_real()
    assert (p * p.compose_affine(1, 0)).imag_part() == Poly((0, 2))


def test_json_roundtrip():
    p = Poly((Fraction(-1, 3), 0, Fraction(7, 2)))
    assert Poly.from_json(p.to_json()) == p


def test_rational_function_pole_and_equality():
    f = RationalFunction(Poly((0, 1)) * Poly((1, 1)), Poly((0, 2)))
    g = RationalFunction(Poly((1, 1)), Poly.const(2))
    assert f.equals(g)
    with pytest.raises(PoleError):
        f(0)


@given(st.integers(1, 12), rationals)
def test_phi_basis_roots_are_newton_nodes(n, r1):
    phi = phi_basis(n, r1)
    assert phi.degree == n
    assert phi.lead == phi_leading_sign(n)
    for k in range(1, n + 1):
        assert phi(newton_node(k, r1)) == 0
