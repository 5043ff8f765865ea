from __future__ import annotations

import pytest

from frobtrace import Ideal, PolyRing, ZeroTrace, ext_monogenic, parse_divisor
from frobtrace.extension import tracelike_from_values


def test_double_cover_traces(yx2):
    S = yx2.total
    assert [str(yx2.trace(S.parse(t))) for t in ["1", "x", "x^2"]] == ["2", "0", "2*y"]
    assert str(yx2.norm(S.parse("x"))) == "2*y"
    assert yx2.trace_image_ideal() == Ideal.unit(yx2.base)
    assert yx2.ramification_divisor() == parse_divisor(S, "1[x]")


def test_trace_key_is_derivative(nottame1):
    assert str(nottame1.trace_key().num) == "x^4"
    assert nottame1.ramification_divisor() == parse_divisor(nottame1.total, "4[x]")
    kinds = {str(C): kind for _, C, _, kind in nottame1.tameness()}
    assert kinds["x"] == "wild"


def test_tracelike_from_values(yx2):
    R = yx2.base
    T = tracelike_from_values(yx2, [R.parse("2"), R.zero()])
    assert T.num == yx2.trace_key().num
    S = yx2.total
    for t in ["1", "x", "x^3+x"]:
        assert T(S.parse(t)) == yx2.trace(S.parse(t))


def test_trace_bilinearity(nottame1):
    S = nottame1.total
    a, b = S.parse("x^3+1"), S.parse("x^7+x")
    r = nottame1.image(nottame1.base.parse("t+1"))
    assert nottame1.trace(a + r * b) == nottame1.trace(a) + nottame1.base.parse("t+1") * nottame1.trace(b)


def test_inseparable_extension_has_zero_trace():
    R = PolyRing.make(2, "y")
    S = PolyRing.make(2, "x")
    ext = ext_monogenic(R, "T^2-y", S, {"T": "x", "y": "x^2"})
    assert ext.trace_image_ideal().is_zero()
    assert not ext.is_trace_surjective()
    with pytest.raises(ZeroTrace):
        ext.trace_key()


def test_d4_presentation(d4):
    assert [str(d4.trace(d4.ring.parse(b))) for b in ["1", "u", "v", "u*v"]] == ["0", "x", "y", "x*y + z"]
    assert str(d4.trace_image_ideal()) == "⟨x, y, z⟩"
    assert not d4.is_trace_surjective()
