from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trireach.rationals import (
    RationalParseError,
    cayley_bound,
    format_rational,
    parse_rational,
)

rationals = st.fractions(max_denominator=200)
unit_rationals = st.fractions(min_value=F(1, 60), max_value=1, max_denominator=60)


def test_exact_arithmetic_examples():
    assert F(1, 3) + F(1, 6) == F(1, 2)
    assert F(2, 5) * F(5, 2) == 1
    assert F(7, 20) > F(1, 3)  # 21/60 > 20/60


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F(1, 2) / F(0)


@given(rationals, rationals)
def test_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(rationals, rationals, rationals)
def test_associativity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(rationals, rationals)
def test_comparison_matches_subtraction_sign(a, b):
    diff = a - b
    assert (a > b) == (diff > 0)
    assert (a == b) == (diff == 0)


@given(rationals, rationals)
def test_canonical_form(a, b):
    from math import gcd

    for value in (a + b, a * b, a - b):
        assert value.denominator > 0
        assert gcd(abs(value.numerator), value.denominator) == 1


def test_parse_examples():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("6/8") == F(3, 4)
    assert parse_rational("-2/6") == F(-1, 3)
    assert parse_rational("7") == 7


@pytest.mark.parametrize("bad", ["2/0", "0.5", "1/2/3", "a/b", "", "1 / 2"])
def test_parse_rejects(bad):
    with pytest.raises(RationalParseError):
        parse_rational(bad)


@given(rationals)
def test_parse_format_round_trip(a):
    assert parse_rational(format_rational(a)) == a


def test_format_canonical():
    assert format_rational(F(6, 8)) == "3/4"
    assert format_rational(F(5)) == "5"
    assert format_rational(F(-1, 3)) == "-1/3"


def test_cayley_examples():
    assert cayley_bound(F(1, 2), F(1, 2), 10) == F(1, 2)  # k = 2
    assert cayley_bound(F(1), F(1), 10) == 1
    assert cayley_bound(F(3, 5), F(1, 5), 10) == F(3, 5)  # k = 5


def test_cayley_brute_force_agreement():
    # independent recomputation straight from the defining expression
    import math

    for x, y, k_max in ((F(2, 7), F(3, 11), 40), (F(5, 6), F(1, 9), 25)):
        expected = min(
            F(math.ceil(k * x) + math.ceil(k * y) - 1, k) for k in range(1, k_max + 1)
        )
        assert cayley_bound(x, y, k_max) == expected


def test_cayley_domain():
    with pytest.raises(ValueError):
        cayley_bound(F(0), F(1, 2))
    with pytest.raises(ValueError):
        cayley_bound(F(1, 2), F(3, 2))
    with pytest.raises(ValueError):
        cayley_bound(F(1, 2), F(1, 2), 0)


@given(unit_rationals, unit_rationals)
def test_cayley_symmetry_and_floor(x, y):
    assert cayley_bound(x, y, 60) == cayley_bound(y, x, 60)
    assert cayley_bound(x, y, 60) >= max(x, y)


@given(unit_rationals, unit_rationals, st.integers(min_value=1, max_value=40))
def test_cayley_nonincreasing_in_k(x, y, k_max):
    assert cayley_bound(x, y, k_max + 1) <= cayley_bound(x, y, k_max)
