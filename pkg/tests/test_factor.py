from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobtrace import PolyRing
from frobtrace.factor import is_irreducible, poly_gcd, univariate_factor
from frobtrace.polys import try_div


def brute_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= d/2 (coefficients low -> high)."""
    d = len(coeffs) - 1
    R = PolyRing.make(p, "x")
    f = R.zero()
    for i, c in enumerate(coeffs):
        f = f + (R.var("x") ** i).scale(c)
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = R.var("x") ** k
            for i, c in enumerate(tail):
                g = g + (R.var("x") ** i).scale(c)
            if try_div(f, g) is not None:
                return False
    return True


@pytest.mark.parametrize("p", [2, 3, 5])
def test_irreducibility_matches_trial_division(p):
    R = PolyRing.make(p, "x")
    x = R.var("x")
    for d in range(1, 5):
        for tail in itertools.product(range(p), repeat=d):
            f = x**d
            for i, c in enumerate(tail):
                f = f + (x**i).scale(c)
            assert is_irreducible(f) == brute_irreducible(list(tail) + [1], p), f


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=9), st.integers(0, 3))
def test_factorization_multiplies_back(p, coeffs, seed):
    R = PolyRing.make(p, "x")
    x = R.var("x")
    f = R.zero()
    for i, c in enumerate(coeffs):
        f = f + (x**i).scale(c % p)
    if f.is_constant():
        return
    factors = univariate_factor(f, seed=seed)
    prod = R.one()
    for g, m in factors:
        assert g.lc == 1 and is_irreducible(g)
        prod = prod * g**m
    assert prod.scale(f.lc) == f
    assert factors == univariate_factor(f, seed=seed + 1)


def test_known_factorizations():
    R = PolyRing.make(2, "x")
    assert [(str(g), m) for g, m in univariate_factor(R.parse("x^4+x"))] == [("x", 1), ("x + 1", 1), ("x^2 + x + 1", 1)]
    R3 = PolyRing.make(3, "x")
    assert [(str(g), m) for g, m in univariate_factor(R3.parse("x^9 - x^3"))] == [
        ("x", 3),
        ("x + 1", 3),
        ("x + 2", 3),
    ]


def test_gcd():
    R = PolyRing.make(5, "x")
    assert poly_gcd(R.parse("(x+1)^2*(x+2)"), R.parse("(x+1)*(x+3)")) == R.parse("x+1")
