from __future__ import annotations

from fractions import Fraction

import pytest

from frobtrace import PolyRing, QDivisor, UncoveredFactor, divisor_of, parse_divisor
from frobtrace.divisors import PrimeTable


@pytest.fixture
def R():
    return PolyRing.make(3, "x")


def test_parse_format_roundtrip(R):
    D = parse_divisor(R, "2[x] + 1/2[x^2+1] - 1[x+1]")
    assert str(D) == "2[x] - 1[x + 1] + 1/2[x^2 + 1]"
    assert parse_divisor(R, str(D)) == D
    assert str(QDivisor.zero(R)) == "0"
    with pytest.raises(Exception):
        parse_divisor(R, "1[x^2+2]")  # x^2 - 1 is reducible


def test_rounding_and_comparison(R):
    D = parse_divisor(R, "3/2[x] - 1/3[x+1]")
    assert str(D.ceil()) == "2[x]"
    assert str(D.floor()) == "1[x] - 1[x + 1]"
    assert D.compare(D.floor()) == "geq"
    assert D.compare(D.ceil()) == "leq"
    assert D.compare(parse_divisor(R, "1[x+1]")) == "incomparable"
    assert not D.is_effective() and D.positive_part().is_effective()
    assert D.period() == 6


def test_divisor_of_univariate(R):
    assert divisor_of(R.parse("2*x^3*(x+1)")) == parse_divisor(R, "3[x] + 1[x+1]")
    assert divisor_of(R.parse("2")).is_zero()


def test_divisor_of_multivariate_needs_table():
    S = PolyRing.make(2, "x,y")
    table = PrimeTable(S, [S.parse("x"), S.parse("x+y")])
    D = divisor_of(S.parse("x^2*(x+y)*y"), table)
    assert D.coeff(S.parse("y")) == 1
    assert D.coeff(S.parse("x")) == 2 and D.coeff(S.parse("x+y")) == 1
    with pytest.raises(UncoveredFactor):
        divisor_of(S.parse("x*(x*y+1)"), table)


def test_arithmetic(R):
    D = parse_divisor(R, "1[x]")
    assert (D * Fraction(1, 2) + D / 2) == D
    assert (D - D).is_zero()
