"""The nine acceptance criteria, one test each.

Each test prints a single ``criterion N: PASS|FAIL`` line with its runtime.
Run ``python3 tests/test_acceptance.py`` for the same report without pytest.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import test_properties as props  # noqa: E402
from conftest import D4_EQUATION, d4_cover, double_cover, kummer_cover, wild_cover  # noqa: E402

from frobtrace import (  # noqa: E402
    Ideal,
    PolyRing,
    QDivisor,
    apply_pmap,
    commute_check,
    delta_of_key,
    divisor_of,
    fedder_test,
    fpt_estimate,
    is_strongly_F_regular,
    parse_divisor,
    surjectivity_certificate,
    tau_hypersurface,
    transpose_key,
    verify_containment_extension,
    verify_transformation,
)
from frobtrace.pmaps import PMapKey  # noqa: E402
from frobtrace.testideal import Hypersurface  # noqa: E402


def criterion_1():
    """Artin's D4 singularity in characteristic 2."""
    R = PolyRing.make(2, "x,y,z")
    h = R.parse(D4_EQUATION)
    m = Ideal.maximal(R)
    assert fedder_test(h) is True
    assert tau_hypersurface(R, h) == m + Ideal(R, [h])
    assert tau_hypersurface(R, h).equals(Ideal(R, R.gens()))
    ext = d4_cover()
    assert ext.trace_image_ideal().equals(Ideal(R, R.gens()))
    assert ext.is_trace_surjective() is False
    assert is_strongly_F_regular(Hypersurface(R, h)) is False


def criterion_2():
    """The double cover y = x^2 over F_3."""
    ext = double_cover()
    R, S = ext.base, ext.total
    x = S.var("x")
    assert ext.ramification_divisor() == QDivisor.prime(x, 1)
    key = ext.trace_key()
    assert key.num == x.scale(2) and key.den is None
    assert divisor_of(key.num) == parse_divisor(S, "1[x]")
    y = R.var("y")
    for u in ["1", "y", "y^2", "1+y", "y+y^2+y^3", "2+y^4", "y^2+1", "y^5+y"]:
        u = R.parse(u)
        exists = transpose_key(ext, PMapKey.of(u, 1)).exists
        assert exists == (u.coeff((0,)) == 0 and not u.is_zero()), u
        assert exists == Ideal(R, [y]).contains(u)
    rows = ext.tameness([y])
    assert [(str(P), str(C), k, kind) for P, C, k, kind in rows] == [("y", "x", 2, "tame")]


def criterion_3():
    """The wildly ramified cover t = x^2 + x^5 over F_2."""
    ext = wild_cover()
    R, S = ext.base, ext.total
    t = R.var("t")
    x = S.var("x")
    assert ext.ramification_divisor() == parse_divisor(S, "4[x]")
    assert [(str(C), k, kind) for _, C, k, kind in ext.tameness([t])][0] == ("x", 2, "wild")
    phi = PMapKey.of(t**2, 1)
    result = transpose_key(ext, phi)
    assert result.exists
    assert apply_pmap(result.key.u, 1, x) == S.parse("1+x^3")
    expected = ext.pullback(parse_divisor(R, "2[t]")) - parse_divisor(S, "4[x]")
    assert result.delta == expected == parse_divisor(S, "2[x + 1] + 2[x^2 + x + 1]")
    assert delta_of_key(result.key) == expected


def criterion_4():
    """A map that commutes with the trace but not with another generator."""
    ext = double_cover()
    R, S = ext.base, ext.total
    from frobtrace import TraceLike

    phi = PMapKey.of(R.parse("y^3+y^2+y"), 1)
    phibar = PMapKey.of(S.parse("x^4+x^2+1"), 1)
    wrong = TraceLike(ext, S.parse("x^4+x"))
    ok, witness = commute_check(ext, phi, phibar, wrong)
    assert ok is False
    assert witness.element == S.var("x")
    assert witness.via_base == R.parse("y") and witness.via_total == R.parse("y^2")
    ok, witness = commute_check(ext, phi, phibar)
    assert ok is True and witness is None


def criterion_5():
    """Tr(tau_Y) = tau_X on the transformation family."""
    ext = double_cover()
    for text in ["0", "1/2[y]", "1[y]", "3/2[y]"]:
        delta = parse_divisor(ext.base, text) if text != "0" else QDivisor.zero(ext.base)
        report = verify_transformation(ext, None, delta)
        assert report.passed, (text, str(report))
    wild = wild_cover()
    report = verify_transformation(wild, None, parse_divisor(wild.base, "2[t]"))
    assert report.passed, str(report)


def criterion_6():
    """Extended test ideal <x^2> strictly inside tau_Y = <x>."""
    ext = double_cover()
    report = verify_containment_extension(ext, parse_divisor(ext.base, "1[y]"))
    assert report.passed
    assert report.lhs == ["x^2"] and report.rhs == ["x"]
    assert "strict" in report.notes


def criterion_7():
    """Property suites, at least 100 cases each."""
    props.test_every_suite_reaches_hundred_cases()


def criterion_8():
    """Surjectivity certificates."""
    ext = double_cover()
    cert = surjectivity_certificate(ext, parse_divisor(ext.base, "1/2[y]"))
    assert cert.certified and ext.is_trace_surjective()
    d4 = d4_cover()
    cert = surjectivity_certificate(d4, QDivisor.zero(d4.base))
    assert not cert.certified and not d4.is_trace_surjective()
    for p, n in [(5, 3), (3, 2), (7, 4), (2, 3)]:
        k = kummer_cover(p, n)
        delta = QDivisor.prime(k.base.var("y"), Fraction(n - 1, n))
        assert surjectivity_certificate(k, delta).certified, (p, n)


def criterion_9():
    """F-pure threshold brackets."""
    for p in (2, 3, 5):
        R = PolyRing.make(p, "x")
        est = fpt_estimate(R.var("x"), 4)
        assert all(hi == 1 for _, hi in est.brackets)
        assert est.contains(Fraction(1))
    R = PolyRing.make(2, "x,y")
    est = fpt_estimate(R.parse("(x+y)^2"), 5)
    lo, hi = est.brackets[-1]
    assert lo < Fraction(1, 2) <= hi and hi - lo == Fraction(1, 32)
    for (lo1, hi1), (lo2, hi2) in zip(est.brackets, est.brackets[1:]):
        assert lo1 <= lo2 and hi2 <= hi1 and hi2 - lo2 < hi1 - lo1
    # brute-force nu by expanding f^r and testing membership in m^[q]
    f = R.parse("(x+y)^2")
    for e, (lo, _) in enumerate(est.brackets, start=1):
        q = 2**e
        nu = max(r for r in range(q + 1) if any(max(m) < q for m in (f**r).terms))
        assert lo == Fraction(nu, q)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]
LIMITS = [5, 1, 1, 1, 10, 1, 30, 2, 5]


def run(index: int) -> tuple[bool, float, str]:
    start = time.perf_counter()
    try:
        CRITERIA[index]()
        ok, detail = True, ""
    except AssertionError as exc:
        ok, detail = False, f" ({exc})" if str(exc) else ""
    elapsed = time.perf_counter() - start
    return ok, elapsed, detail


@pytest.mark.parametrize("index", range(9), ids=[f"criterion_{i + 1}" for i in range(9)])
def test_criterion(index, capsys):
    ok, elapsed, detail = run(index)
    with capsys.disabled():
        print(f"\ncriterion {index + 1}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s{detail}")
    assert ok, detail
    assert elapsed < LIMITS[index], f"took {elapsed:.2f}s"


if __name__ == "__main__":
    failed = 0
    for i in range(9):
        ok, elapsed, detail = run(i)
        failed += not ok
        print(f"criterion {i + 1}: {'PASS' if ok else 'FAIL'} in {elapsed:.2f}s{detail}")
    sys.exit(1 if failed else 0)
