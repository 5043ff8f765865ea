from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobtrace import ParseError, PolyRing, UnknownVariable
from frobtrace.errors import NotDivisible
from frobtrace.polys import exact_div, is_prime, valuation


def test_is_prime_against_trial_division():
    naive = [n for n in range(2, 400) if all(n % d for d in range(2, n))]
    assert [n for n in range(400) if is_prime(n)] == naive
    assert is_prime(2**31 - 1)
    assert not is_prime(2**31 - 3)


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing.make(4, "x")
    with pytest.raises(ValueError):
        PolyRing.make(2**31 + 11, "x")
    with pytest.raises(ValueError):
        PolyRing.make(3, "x,x")
    with pytest.raises(ValueError):
        PolyRing.make(3, "X")


@pytest.mark.parametrize(
    "text, canonical",
    [
        ("(x+1)^6", "x^6 + 2*x^3 + 1"),
        ("x^3 - x", "x^3 + 2*x"),
        ("3*x + 1", "1"),
        ("x*y - y*x", "0"),
        ("-(x - y)^2", "2*x^2 + 2*x*y + 2*y^2"),
        ("(x^2+y)*(x^2-y)", "x^4 + 2*y^2"),
    ],
)
def test_parse_and_canonical_form(text, canonical):
    R = PolyRing.make(3, "x,y")
    assert str(R.parse(text)) == canonical


def test_term_orders():
    lex = PolyRing.make(5, "x,y", "lex")
    grevlex = PolyRing.make(5, "x,y")
    assert str(lex.parse("y^3 + x")) == "x + y^3"
    assert str(grevlex.parse("y^3 + x")) == "y^3 + x"
    g3 = PolyRing.make(5, "x,y,z")
    # degree 2 monomials: x^2 > x*y > y^2 > x*z > y*z > z^2
    assert str(g3.parse("z^2+y*z+x*z+y^2+x*y+x^2")) == "x^2 + x*y + y^2 + x*z + y*z + z^2"


@pytest.mark.parametrize(
    "text, exc",
    [("x +* 1", ParseError), ("2x", ParseError), ("x^", ParseError), ("(x", ParseError), ("w", UnknownVariable), ("x^-1", ParseError)],
)
def test_parse_errors(text, exc):
    R = PolyRing.make(3, "x,y")
    with pytest.raises(exc):
        R.parse(text)


def test_parse_error_reports_position():
    R = PolyRing.make(3, "x")
    with pytest.raises(ParseError, match="position 3"):
        R.parse("x +* 1")


def test_exponent_guard():
    R = PolyRing.make(3, "x")
    with pytest.raises(ParseError):
        R.parse("x^99999999999")


def test_frobenius_power_shortcut():
    R = PolyRing.make(5, "x,y")
    f = R.parse("x + 2*y + 1")
    assert f**25 == R.parse("x^25 + 2*y^25 + 1")
    assert f**7 == f**5 * f**2


def test_exact_division_and_valuation():
    R = PolyRing.make(2, "x")
    f = R.parse("x^3*(x+1)^2")
    assert exact_div(f, R.parse("x^2+1")) == R.parse("x^3")
    with pytest.raises(NotDivisible):
        exact_div(f, R.parse("x^2+x+1"))
    assert valuation(f, R.parse("x+1")) == (2, R.parse("x^3"))


def test_derivative_and_substitute():
    R = PolyRing.make(3, "x,y")
    f = R.parse("x^3*y + x^2*y^2")
    assert f.derivative(0) == R.parse("2*x*y^2")
    S = PolyRing.make(3, "t")
    assert f.substitute([S.parse("t"), S.parse("t+1")], S) == S.parse("t^3*(t+1) + t^2*(t+1)^2")


coeffs = st.lists(st.integers(0, 6), min_size=1, max_size=5)


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    R = PolyRing.make(7, "x")
    f, g, h = (sum((R.var("x") ** i).scale(k) for i, k in enumerate(v)) or R.zero() for v in (a, b, c))
    f, g, h = (R.zero() + u for u in (f, g, h))
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f - f).is_zero()
    assert R.parse(str(f * g)) == f * g
