from __future__ import annotations

from fractions import Fraction

import pytest

from frobtrace import (
    Ideal,
    PolyRing,
    PreconditionError,
    QDivisor,
    ResourceExceeded,
    configured,
    is_sharply_F_pure,
    is_strongly_F_regular,
    parse_divisor,
    tau,
    tau_hypersurface,
    verify_intersection,
)
from frobtrace.testideal import FractionalIdeal, Hypersurface, fpt_estimate, nu_sequence


def brute_tau_univariate(c: Fraction, p: int, e: int = 8) -> int:
    """Exponent k with tau(c·[x]) = <x^k>, via (x^{ceil(c p^e)})^{[1/p^e]}."""
    q = p**e
    return -(-c.numerator * q // c.denominator) // q


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("c", [Fraction(k, d) for d in (1, 2, 3, 4, 6, 9, 10) for k in range(0, 2 * d + 1)])
def test_tau_on_a_line_matches_brute_force(p, c):
    R = PolyRing.make(p, "x")
    D = QDivisor.prime(R.var("x"), c)
    assert tau(R, D) == Ideal(R, [R.var("x") ** brute_tau_univariate(c, p)])


def test_tau_fractional():
    R = PolyRing.make(2, "x")
    J = tau(R, parse_divisor(R, "1[x] - 1[x+1]"))
    assert isinstance(J, FractionalIdeal)
    assert str(J) == "(1/(x + 1))·⟨x⟩"


def test_tau_with_ideal_power():
    R = PolyRing.make(3, "x,y")
    m = Ideal.maximal(R)
    # in dimension 2, tau(m^t) = m^{floor(t) - 1} for t >= 1
    assert tau(R, None, m, Fraction(1)).is_unit()
    assert tau(R, None, m, Fraction(2)) == m
    assert tau(R, None, m, Fraction(5, 2)) == m


def test_non_principal_chain_respects_cap():
    R = PolyRing.make(2, "x,y")
    a = Ideal(R, [R.parse("x^2"), R.parse("y^3")])
    with configured(max_e=1), pytest.raises(ResourceExceeded):
        tau(R, None, a, Fraction(5, 7))


def test_hypersurfaces():
    R = PolyRing.make(2, "x,y,z")
    h = R.parse("z^2+x*y*z+x*y^2+x^2*y")
    assert str(tau_hypersurface(R, h)) == "⟨x, y, z⟩"
    assert tau_hypersurface(R, h, test_element=R.parse("y^2+y*z")) == tau_hypersurface(R, h)
    S = PolyRing.make(3, "x,y")
    assert is_strongly_F_regular(Hypersurface(S, S.parse("x*y - 1")))
    assert not is_strongly_F_regular(Hypersurface(S, S.parse("x*y")), at_origin=True)


def test_sharp_f_purity():
    R = PolyRing.make(3, "x")
    assert is_sharply_F_pure(R, parse_divisor(R, "1/2[x]")).value
    # div(x) itself is still sharply F-pure: x^{p-1} is not in (x^p)
    assert is_sharply_F_pure(R, parse_divisor(R, "1[x]")).value
    verdict = is_sharply_F_pure(R, parse_divisor(R, "3/2[x]"))
    assert not verdict.value and verdict.conclusive


def test_nu_sequence_is_brute_force_nu():
    R = PolyRing.make(3, "x,y")
    f = R.parse("x^2 + y^3")
    nus = nu_sequence(f, 3)
    for e in range(1, 4):
        q = 3**e
        brute = max(r for r in range(q * 2) if any(max(m) < q for m in (f**r).terms))
        assert nus[e] == brute


def test_fpt_of_cusp_brackets():
    R = PolyRing.make(5, "x,y")
    est = fpt_estimate(R.parse("x^2 + y^3"), 3)
    # p = 5 = 5 mod 6: fpt = 5/6 - 1/30
    assert est.contains(Fraction(5, 6) - Fraction(1, 30))


def test_intersection_report(yx2):
    report = verify_intersection(yx2, parse_divisor(yx2.base, "1[y]"))
    assert report.passed
    d = report.to_dict()
    assert d["lhs_gb"] == ["y"] and d["verdict"] == "PASS"


def test_fractional_tau_independent_of_clearing():
    from frobtrace.testideal import tau_fractional

    R = PolyRing.make(3, "x")
    D = parse_divisor(R, "1/2[x] - 3/2[x+1]")
    first = tau_fractional(R, D, clearing=R.parse("(x+1)^2"))
    second = tau_fractional(R, D, clearing=R.parse("x*(x+1)^3"))
    assert first.equals(second)


@pytest.mark.parametrize("p", [2, 3])
def test_tau_is_monotone(p):
    R = PolyRing.make(p, "x,y")
    x = R.var("x")
    steps = [Fraction(k, 4) for k in range(0, 10)]
    ideals = [tau(R, QDivisor.prime(x, c)) for c in steps]
    for big, small in zip(ideals, ideals[1:]):
        assert big.contains_ideal(small)
    m = Ideal.maximal(R)
    powers = [tau(R, None, m, t) for t in steps[4:]]
    for big, small in zip(powers, powers[1:]):
        assert big.contains_ideal(small)


def test_sharp_purity_agrees_with_fedder_on_random_hypersurfaces():
    import random

    from frobtrace import fedder_test

    rng = random.Random(7)
    checked = 0
    while checked < 50:
        p = rng.choice([2, 3])
        R = PolyRing.make(p, "x,y")
        h = R.zero()
        for _ in range(rng.randint(1, 3)):
            a, b = rng.randint(0, 3), rng.randint(0, 3)
            if a + b:
                h = h + R.monomial([a, b]).scale(rng.randint(1, p - 1))
        if h.is_constant():
            continue
        try:
            quotient = Hypersurface(R, h)
        except PreconditionError:
            continue
        expected = fedder_test(h)
        assert is_sharply_F_pure(quotient).value == expected, h
        # the pair (A^2, h^1) is sharply F-pure exactly when R/(h) is F-pure
        pair = is_sharply_F_pure(R, None, Ideal(R, [h]), Fraction(1))
        assert pair.value == expected and pair.conclusive, h
        checked += 1


@pytest.mark.parametrize("p, f", [(2, "x"), (3, "x^2"), (5, "x^3*(x+1)"), (3, "x^2*(x+1)^2")])
def test_fpt_brackets_match_tau_jumps(p, f):
    R = PolyRing.make(p, "x")
    f = R.parse(f)
    D = parse_divisor(R, " + ".join(f"{m}[{g}]" for g, m in __import__("frobtrace").univariate_factor(f)))
    for lo, hi in fpt_estimate(f, 4).brackets:
        assert tau(R, D * lo).is_unit()
        assert not tau(R, D * hi).is_unit()
