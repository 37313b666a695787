from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bannai_ito.numcore import GaussRat, I, format_rat, lgamma_signed, parse_rat, pochhammer, rat_sqrt
from conftest import rationals

gauss = st.builds(GaussRat, rationals, rationals)


def test_parse_and_format_roundtrip():
    assert parse_rat("-3/6") == Fraction(-1, 2)
    assert parse_rat("7") == 7
    assert format_rat(Fraction(4, 2)) == "2"
    assert format_rat(Fraction(-5, 15)) == "-1/3"


@pytest.mark.parametrize("bad", ["0.5", "1e-3", "1/0", "abc", ""])
def test_parse_rejects_non_rationals(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


@given(rationals)
def test_format_parse_inverse(x):
    assert parse_rat(format_rat(x)) == x


@given(gauss, gauss, gauss)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a != 0:
        assert a * (1 / a) == 1


def test_imaginary_unit():
    assert I * I == -1
    assert (1 + I) ** 2 == 2 * I
    assert GaussRat(3, 4).conjugate() == GaussRat(3, -4)


@given(rationals, st.integers(0, 8))
def test_pochhammer_step(x, n):
    assert pochhammer(x, n + 1) == pochhammer(x, n) * (x + n)


def test_pochhammer_values():
    assert pochhammer(Fraction(1), 5) == 120
    assert pochhammer(Fraction(-3), 4) == 0
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)


def test_rat_sqrt():
    assert rat_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rat_sqrt(Fraction(2)) is None


def test_lgamma_signed_matches_gamma():
    import math
    for x in (0.3, 2.5, -0.5, -1.7, -2.2):
        assert lgamma_signed(x).value == pytest.approx(math.gamma(x), rel=1e-12)
