import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newtonineq.scalar import (
    binomial,
    canonical,
    cmp_sqrt_scaled,
    format_decimal,
    format_rational,
    is_perfect_square,
    parse_rational,
    rational_sqrt,
)


@pytest.mark.parametrize(
    "text, value",
    [("3/4", Fraction(3, 4)), ("-6/8", Fraction(-3, 4)), ("+5", 5), ("0.25", Fraction(1, 4)),
     ("-1.5e2", -150), ("2.5E-1", Fraction(1, 4)), (" 7 ", 7), (".5", Fraction(1, 2))],
)
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2", "1.2.3", "nan"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_format_round_trip():
    assert format_rational(Fraction(6, 8)) == "3/4"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(-3) == "-3"
    for v in (Fraction(-22, 7), Fraction(0), Fraction(10**30 + 1, 3)):
        assert parse_rational(format_rational(v)) == v


def test_format_decimal():
    assert format_decimal(Fraction(1, 3), 4) == "0.3333"
    assert format_decimal(Fraction(2, 3), 2) == "0.67"


def test_canonical_collapses_integers():
    assert type(canonical(Fraction(4, 2))) is int
    assert canonical(Fraction(1, 2)) == Fraction(1, 2)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(16, 8) == 12870
    assert binomial(5, -1) == 0
    assert binomial(5, 6) == 0


def test_binomial_pascal():
    for n in range(1, 65):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)
            assert binomial(n, k) == math.comb(n, k)


def test_cmp_sqrt_scaled_examples():
    assert cmp_sqrt_scaled(2, 1, 4) == 0
    assert cmp_sqrt_scaled(3, 1, 4) == 1
    assert cmp_sqrt_scaled(1, 1, 2) == -1
    with pytest.raises(ValueError):
        cmp_sqrt_scaled(-1, 1, 1)


def test_cmp_sqrt_scaled_against_floats():
    rng = random.Random(5)
    for _ in range(10_000):
        l, r, f = (Fraction(rng.randint(0, 400), rng.randint(1, 20)) for _ in range(3))
        diff = float(l) - math.sqrt(float(f)) * float(r)
        if abs(diff) > 1e-6:
            assert cmp_sqrt_scaled(l, r, f) == (1 if diff > 0 else -1)


def test_perfect_squares():
    assert is_perfect_square(Fraction(9, 4)) and rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert not is_perfect_square(2)
    assert not is_perfect_square(-4)


rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals)
def test_arithmetic_stays_canonical(x, y):
    for v in (x + y, x * y):
        c = canonical(v)
        assert Fraction(c) == v
        assert math.gcd(Fraction(c).numerator, Fraction(c).denominator) == 1
        assert parse_rational(format_rational(c)) == v
