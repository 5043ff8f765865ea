from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobtrace import Ideal, PolyRing, apply_pmap, cartier_apply, fedder_test, frob_root, pe_decompose
from frobtrace.frobenius import in_monomial_bracket


@given(st.sampled_from([2, 3, 5]), st.integers(1, 2), st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12), st.integers(1, 4)), max_size=6))
def test_decomposition_reconstructs(p, e, terms):
    R = PolyRing.make(p, "x,y")
    f = R.zero()
    for a, b, c in terms:
        f = f + R.monomial([a, b]).scale(c)
    dec = pe_decompose(f, e)
    q = p**e
    assert dec.reconstruct(R) == f
    assert all(all(0 <= k < q for k in b) for b in dec.parts)


def test_frob_root_examples():
    R = PolyRing.make(2, "x")
    assert str(frob_root(Ideal(R, [R.parse("x^2")]), 1)) == "⟨x⟩"
    assert str(frob_root(Ideal(R, [R.parse("x")]), 1)) == "⟨1⟩"
    S = PolyRing.make(3, "x,y")
    # (x^3 y + x y^3)^{[1/3]}: parts at b=(0,1) and (1,0) are x and y
    assert frob_root(Ideal(S, [S.parse("x^3*y + x*y^3")]), 1) == Ideal(S, [S.parse("x"), S.parse("y")])
    assert frob_root(Ideal(S, []), 1).is_zero()


def test_cartier_and_pmap():
    R = PolyRing.make(3, "x")
    x = R.var("x")
    # Phi(x^{2/3}) = 1, Phi(x^{5/3}) = x, Phi(x^{c/3}) = 0 otherwise in degree < 6
    assert [apply_pmap(R.one(), 1, x**c) for c in range(6)] == [0, 0, 1, 0, 0, x]
    assert apply_pmap(x, 1, x) == 1
    assert cartier_apply(x**2, 1, Ideal(R, [x])) == Ideal(R, [x])


def test_fedder_examples():
    R = PolyRing.make(2, "x,y,z")
    assert fedder_test(R.parse("z^2+x*y*z+x*y^2+x^2*y")) is True
    assert fedder_test(R.parse("x^2+y^3")) is False
    S = PolyRing.make(3, "x,y")
    assert fedder_test(S.parse("x*y")) is True
    assert fedder_test(S.parse("y^2 - x^3")) is False
    # the node at (1, 0) after translation
    assert fedder_test(S.parse("(x-1)*y"), at=Ideal(S, [S.parse("x-1"), S.parse("y")])) is True


def test_monomial_bracket_membership_brute():
    R = PolyRing.make(2, "x,y")
    for a, b in itertools.product(range(5), repeat=2):
        f = R.monomial([a, b])
        assert in_monomial_bracket(f, 2) == (a >= 2 or b >= 2)


def test_at_must_be_rational_point():
    R = PolyRing.make(3, "x,y")
    with pytest.raises(Exception):
        fedder_test(R.parse("x*y"), at=Ideal(R, [R.parse("x^2+1"), R.parse("y")]))
