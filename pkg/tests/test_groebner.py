from __future__ import annotations

import itertools

import pytest

from frobtrace import Ideal, PolyRing, ResourceExceeded, configured
from frobtrace.groebner import format_ideal


def brute_member(f, gens, p, deg):
    """f in <gens> by searching cofactors of bounded degree (tiny cases only)."""
    R = f.ring
    monos = [R.monomial(e) for e in itertools.product(range(deg + 1), repeat=R.nvars) if sum(e) <= deg]
    for cs in itertools.product(range(p), repeat=len(monos) * len(gens)):
        total = R.zero()
        for k, g in enumerate(gens):
            cof = R.zero()
            for j, m in enumerate(monos):
                cof = cof + m.scale(cs[k * len(monos) + j])
            total = total + cof * g
        if total == f:
            return True
    return False


def test_membership_against_cofactor_search():
    R = PolyRing.make(2, "x,y")
    gens = [R.parse("x^2+y"), R.parse("x*y+1")]
    I = Ideal(R, gens)
    for text in ["x^3+x*y", "y^2+x", "x+y^2", "x*y+1", "x^2*y+x", "1"]:
        f = R.parse(text)
        if brute_member(f, gens, 2, 1):
            assert I.contains(f), text
    assert I.contains(R.parse("x^3 + x*y"))
    assert I.contains(R.parse("y^2 + x"))


def test_reduced_basis_is_sorted_monic_and_canonical():
    R = PolyRing.make(5, "x,y")
    I = Ideal(R, [R.parse("2*x^2 + y"), R.parse("3*x*y - 1")])
    gb = I.gb
    assert all(g.lc == 1 for g in gb)
    assert [g.lm for g in gb] == sorted((g.lm for g in gb), key=R.sort_key, reverse=True)
    assert Ideal(R, list(gb)).gb == gb


def test_unit_zero_and_formatting():
    R = PolyRing.make(3, "x,y")
    assert format_ideal(Ideal(R, [])) == "⟨0⟩"
    assert str(Ideal(R, [R.parse("x+1"), R.parse("x")])) == "⟨1⟩"
    assert Ideal(R, [R.parse("x+1"), R.parse("x")]).is_unit()
    assert str(Ideal(R, [R.parse("x^2"), R.parse("x*y")])) == "⟨x^2, x*y⟩"


def test_intersection_and_colon():
    R = PolyRing.make(3, "x,y")
    x, y = R.gens()
    I = Ideal(R, [x])
    J = Ideal(R, [y])
    assert I.intersect(J) == Ideal(R, [x * y])
    K = Ideal(R, [x**2, x * y])
    assert K.colon(x) == Ideal(R, [x, y])
    assert K.colon(Ideal(R, [x, y])) == Ideal(R, [x])
    assert (I + J) == Ideal.maximal(R)
    assert (I * J) == Ideal(R, [x * y])
    assert Ideal.maximal(R).power(2) == Ideal(R, [x**2, x * y, y**2])
    assert Ideal(R, [x + y]).bracket(3) == Ideal(R, [x**3 + y**3])


def test_lex_elimination_shape():
    R = PolyRing.make(7, "x,y", "lex")
    I = Ideal(R, [R.parse("x^2 - y"), R.parse("x*y - 1")])
    # the last basis element only involves y
    assert I.gb[-1].used_vars() == {1}
    assert str(I.gb[-1]) == "y^3 + 6"


def test_step_cap():
    R = PolyRing.make(5, "x,y,z")
    gens = [R.parse(t) for t in ["x^3*y+y*z^2+1", "y^3*x+x*z", "z^3*y+x*y-2", "x*y*z-1"]]
    with configured(step_cap=5), pytest.raises(ResourceExceeded):
        Ideal(R, gens).gb
