from __future__ import annotations

import itertools

import pytest

from frobtrace import NonIntegral, PolyRing, QDivisor, delta_of_key, key_of_delta, parse_divisor
from frobtrace.pmaps import PMapKey, iterate_map, key_from_values, transpose_key


def test_key_divisor_roundtrip():
    R = PolyRing.make(3, "x")
    D = parse_divisor(R, "1/2[x] + 1[x+1]")
    phi = key_of_delta(D, 1)
    assert phi.u == R.parse("x*(x+1)^2")
    assert delta_of_key(phi) == D


def test_non_integral_reports_level():
    R = PolyRing.make(2, "x")
    with pytest.raises(NonIntegral) as info:
        key_of_delta(parse_divisor(R, "1/5[x]"), 1)
    assert info.value.valid_e == 4


def test_key_from_values_matches_definition():
    R = PolyRing.make(3, "x,y")
    values = {b: R.monomial(list(b)) + 1 for b in itertools.product(range(3), repeat=2)}
    phi = key_from_values(R, 1, values)
    for b, v in values.items():
        assert phi(R.monomial(list(b))) == v


def test_iteration_composes():
    R = PolyRing.make(2, "x")
    phi = PMapKey.of(R.parse("x+1"), 1)
    phi2 = iterate_map(phi, 2)
    x = R.var("x")
    for g in [x**k for k in range(8)]:
        assert phi2(g) == phi(phi(g))


def test_transpose_on_double_cover(yx2):
    R = yx2.base
    res = transpose_key(yx2, PMapKey.of(R.parse("y"), 1))
    assert res.exists and res.key.u == yx2.total.one()
    res = transpose_key(yx2, PMapKey.of(R.one(), 1))
    assert not res.exists
    assert str(res.delta) == "-1[x]"
    with pytest.raises(Exception):
        res.key


def test_zero_key_rejected():
    R = PolyRing.make(2, "x")
    with pytest.raises(Exception):
        PMapKey.of(R.zero(), 1)
    assert delta_of_key(PMapKey.of(R.one(), 2)) == QDivisor.zero(R)
