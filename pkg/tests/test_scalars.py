"""
Exact Scalar Test Suite

Checks the extended rationals with a formal infinitesimal: parsing and
formatting, absorbing +inf, the lexicographic order and its compatibility
with addition.

Test Coverage:
- to_fraction / parse_rational input validation (floats and booleans rejected)
- parse_scalar / format_scalar for rationals, "inf" and "p/q+e*eta"
- +inf arithmetic and the errors it raises; float("inf") compares as +inf
- Order properties (hypothesis)

Usage:
    pytest tests/test_scalars.py -v
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropdeg.algebra.scalars import (
    INF_RAT,
    INFINITY,
    ZERO,
    ExtRat,
    PerturbedScalar,
    format_scalar,
    parse_rational,
    parse_scalar,
    to_fraction,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(lambda base, eps: PerturbedScalar(ExtRat(base), eps), rationals, rationals)


@pytest.mark.parametrize("value", [0.5, 1e-9, True, None, [1]])
def test_to_fraction_rejects_inexact_values(value):
    with pytest.raises(TypeError):
        to_fraction(value)


@pytest.mark.parametrize(
    "text, expected",
    [("3", Fraction(3)), ("-7/4", Fraction(-7, 4)), (" 2 / 6 ", Fraction(1, 3))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1/0", "0.5", "1e3", "", "inf"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_scalar_with_infinitesimal():
    value = parse_scalar("1/2+3*eta")
    assert value.real == Fraction(1, 2)
    assert value.eps_coeff == 3
    assert value.is_perturbed
    assert format_scalar(parse_scalar("-1/2-1/3*eta")) == "-1/2-1/3*eta"


def test_parse_scalar_infinity():
    value = parse_scalar("inf")
    assert value == INFINITY
    assert not value.is_finite
    assert value.real is None
    assert format_scalar(value) == "inf"


def test_infinite_scalar_cannot_be_perturbed():
    with pytest.raises(ValueError):
        PerturbedScalar(INF_RAT, Fraction(1))


def test_infinity_absorbs_addition():
    assert INFINITY + PerturbedScalar.of(5) == INFINITY
    assert PerturbedScalar.of("-3/2") + INFINITY == INFINITY
    assert INFINITY - PerturbedScalar.of(1) == INFINITY


@pytest.mark.parametrize(
    "operation",
    [
        lambda: PerturbedScalar.of(1) - INFINITY,
        lambda: -INFINITY,
        lambda: INFINITY.scale(-1),
        lambda: INFINITY.scale(0),
    ],
)
def test_infinity_arithmetic_errors(operation):
    with pytest.raises(ArithmeticError):
        operation()


def test_eta_is_positive_and_infinitesimal():
    eta = PerturbedScalar.eta()
    assert ZERO < eta < PerturbedScalar.of(Fraction(1, 10**12))
    assert PerturbedScalar.of(1) - eta < PerturbedScalar.of(1)
    assert PerturbedScalar.of(1) < INFINITY


def test_division_scales_both_parts():
    value = PerturbedScalar.of("3") + PerturbedScalar.eta(2)
    assert value / 4 == PerturbedScalar(ExtRat(Fraction(3, 4)), Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        value / 0


def test_comparison_with_plain_numbers():
    assert PerturbedScalar.of("1/2") == Fraction(1, 2)
    assert PerturbedScalar.of(2) > 1
    assert ExtRat.of("inf") > 10**9


@settings(max_examples=200, deadline=None)
@given(scalars, scalars, scalars)
def test_order_is_compatible_with_addition(a, b, c):
    if a < b:
        assert a + c < b + c
    elif a == b:
        assert a + c == b + c
    else:
        assert a + c > b + c


@settings(max_examples=200, deadline=None)
@given(scalars, scalars)
def test_order_is_total_and_antisymmetric(a, b):
    assert (a < b) + (a == b) + (a > b) == 1
    assert (a <= b) == (not a > b)


@settings(max_examples=100, deadline=None)
@given(scalars, st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
def test_positive_scaling_preserves_order(a, factor):
    b = a + PerturbedScalar.eta(1)
    assert a.scale(factor) < b.scale(factor)


def test_float_infinity_is_the_only_float_accepted():
    assert PerturbedScalar.of(3) < float("inf")
    assert INFINITY == float("inf")
    assert not INFINITY < float("inf")
    with pytest.raises(TypeError):
        PerturbedScalar.of(3) < 0.5
