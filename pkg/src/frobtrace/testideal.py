"""Big test ideals, F-pure thresholds, F-singularity tests and transformation checks.

Test ideals of pairs (R, Delta) on a polynomial ring R are computed exactly:

* if every coefficient of Delta has denominator prime to p, pick e0 with
  (p^e0 - 1)Delta integral and close the ideal generated by a test element
  under the single map phi_Delta at level e0;
* a factor p^k in the denominators is removed first using
  tau(Delta) = tau(p^k Delta)^[1/p^k].

Triples with a non-principal ideal a^t fall back to an ascending chain over
increasing Frobenius levels which stops once two consecutive levels agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .divisors import PrimeTable, QDivisor, divisor_of
from .errors import (
    FrobtraceError,
    NeedTestElement,
    PreconditionError,
    ResourceExceeded,
    UncoveredFactor,
)
from .extension import MonogenicExtension, TraceLike
from .factor import poly_gcd
from .frobenius import frob_root, point_of, translate
from .groebner import Ideal, eliminate, limits
from .polys import Poly, PolyRing, exact_div


@dataclass(frozen=True)
class Hypersurface:
    """The quotient ambient/(h); ideals of it are ambient ideals containing h."""

    ambient: PolyRing
    h: Poly

    def __post_init__(self):
        if self.h.ring != self.ambient:
            raise FrobtraceError(f"{self.h} is not in {self.ambient}")
        if self.h.is_constant():
            raise FrobtraceError("a hypersurface needs a nonconstant equation")
        if self.h.is_univariate():
            from .factor import univariate_factor

            if any(m > 1 for _, m in univariate_factor(self.h)):
                raise PreconditionError(f"{self.h} is not reduced")

    @property
    def p(self) -> int:
        return self.ambient.p


Ring = PolyRing | Hypersurface


def _ambient(ring: Ring) -> PolyRing:
    return ring.ambient if isinstance(ring, Hypersurface) else ring


def _t(t) -> Fraction:
    t = Fraction(t)
    if t < 0:
        raise ValueError("the exponent t must be nonnegative")
    return t


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


# -- fractional ideals ----------------------------------------------------------------


@dataclass(frozen=True)
class FractionalIdeal:
    """(1/denominator)·numerator."""

    numerator: Ideal
    denominator: Poly

    def __post_init__(self):
        d = self.denominator
        if d.is_zero():
            raise FrobtraceError("zero denominator")
        num = self.numerator
        gb = num.gb
        if len(gb) == 1 and gb[0].is_univariate() and d.is_univariate():
            g = poly_gcd(gb[0], d)
            if not g.is_constant():
                num = Ideal(num.ring, [exact_div(gb[0], g)])
                d = exact_div(d, g)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", d.monic())

    def equals(self, other: FractionalIdeal) -> bool:
        return (self.numerator * other.denominator).equals(other.numerator * self.denominator)

    def is_integral(self) -> bool:
        return self.denominator.is_constant()

    def __str__(self) -> str:
        if self.denominator.is_constant():
            return str(self.numerator)
        return f"(1/({self.denominator}))·{self.numerator}"


# -- helpers ------------------------------------------------------------------------------


def _fold(delta: QDivisor, a: Ideal | None, t: Fraction, table: PrimeTable | None):
    """Absorb a principal a^t into the divisor when its generator factors."""
    if a is None or t == 0:
        return delta, None, Fraction(0)
    if a.is_zero():
        raise FrobtraceError("the ideal a must be nonzero")
    if a.is_unit():
        return delta, None, Fraction(0)
    if len(a.gb) == 1:
        try:
            return delta + divisor_of(a.gb[0], table) * t, None, Fraction(0)
        except UncoveredFactor:
            pass
    return delta, a, t


def _split_p_part(delta: QDivisor, p: int) -> tuple[int, QDivisor]:
    k = 0
    for c in delta.coeffs.values():
        d, j = c.denominator, 0
        while d % p == 0:
            d //= p
            j += 1
        k = max(k, j)
    return k, delta * p**k


def _order_mod(p: int, d: int) -> int:
    if d == 1:
        return 1
    e, x = 1, p % d
    while x != 1:
        x = x * p % d
        e += 1
    return e


def _closure(J: Ideal, key: Ideal, e: int) -> Ideal:
    """Smallest ideal containing J and stable under J -> (key·J)^[1/q]."""
    while True:
        new = frob_root(key * J, e)
        if J.contains_ideal(new):
            return J.minimal()
        J = (J + new).minimal()


def _key_ideal(ring: PolyRing, delta: QDivisor, q: int, extra: Poly | None = None) -> Poly:
    u = ((q - 1) * delta).ceil().to_poly()
    return u * extra if extra is not None else u


# -- test ideals --------------------------------------------------------------------------


def tau_regular(
    ring: PolyRing,
    delta: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    table: PrimeTable | None = None,
) -> Ideal:
    """tau_b(R; Delta, a^t) for a polynomial ring R and effective Delta."""
    delta = delta if delta is not None else QDivisor.zero(ring)
    if not delta.is_effective():
        raise PreconditionError(f"{delta} is not effective; use tau_fractional")
    delta, a, t = _fold(delta, a, _t(t), table)
    p = ring.p
    if a is None:
        k, d2 = _split_p_part(delta, p)
        if d2.is_integral():
            J = Ideal(ring, [d2.to_poly()])
        else:
            e0 = _order_mod(p, d2.period())
            q0 = p**e0
            seed = Ideal(ring, [d2.ceil().to_poly()])
            J = _closure(seed, Ideal(ring, [_key_ideal(ring, d2, q0)]), e0)
        if k:
            J = frob_root(J, k)
        return J.minimal()
    g = a.gb[0]
    seed = Ideal(ring, [delta.ceil().to_poly() * g ** _ceil(t)])
    return _chain(ring, seed, lambda q: Ideal(ring, [_key_ideal(ring, delta, q)]) * a.power(_ceil(t * (q - 1))))


def _chain(ring: PolyRing, seed: Ideal, key_at) -> Ideal:
    J = seed
    prev: Ideal | None = None
    cap = limits.max_e
    for e in range(1, cap + 1):
        J = _closure(J, key_at(ring.p**e), e)
        if prev is not None and J.equals(prev):
            return J
        prev = J
    raise ResourceExceeded(
        f"test ideal chain did not stabilise by e = {cap}",
        {"previous": str(prev), "last": str(J)},
    )


def default_clearing(delta: QDivisor) -> Poly:
    """prod P^{ceil(-coeff)} over the primes with negative coefficient."""
    return delta.negative_part().ceil().to_poly()


def tau_fractional(
    ring: PolyRing,
    delta: QDivisor,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    clearing: Poly | None = None,
    table: PrimeTable | None = None,
) -> FractionalIdeal:
    """tau_b(R; Delta, a^t) = (1/f)·tau_b(R; Delta + div f, a^t) for any clearing f."""
    f = clearing if clearing is not None else default_clearing(delta)
    shifted = delta + divisor_of(f, table)
    if not shifted.is_effective():
        raise PreconditionError(f"{f} does not clear {delta} to an effective divisor")
    return FractionalIdeal(tau_regular(ring, shifted, a, t, table), f)


def jacobian_test_element(h: Poly) -> Poly:
    ring = h.ring
    hI = Ideal(ring, [h])
    for i in range(ring.nvars):
        d = h.derivative(i)
        if not d.is_zero() and not hI.contains(d):
            return hI.reduce(d)
    raise NeedTestElement(f"no partial derivative of {h} is a nonzero element of the quotient")


def tau_hypersurface(
    ambient: PolyRing,
    h: Poly,
    test_element: Poly | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
) -> Ideal:
    """tau_b(ambient/(h); a^t) as an ambient ideal containing h.

    Starts from a test element c (a Jacobian partial derivative by default)
    and closes <c, h> under J -> (h^{q-1} a^{ceil(t(q-1))} J)^[1/q].
    """
    Hypersurface(ambient, h)
    c = test_element if test_element is not None else jacobian_test_element(h)
    if Ideal(ambient, [h]).contains(c):
        raise NeedTestElement(f"{c} is zero in the quotient")
    t = _t(t)
    p = ambient.p
    if a is None or t == 0 or a.is_unit():
        return _closure(Ideal(ambient, [c, h]), Ideal(ambient, [h ** (p - 1)]), 1)
    g = a.gb[0]
    seed = Ideal(ambient, [c * g ** _ceil(t), h])
    return _chain(ambient, seed, lambda q: Ideal(ambient, [h ** (q - 1)]) * a.power(_ceil(t * (q - 1))))


def tau(
    ring: Ring,
    delta: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    table: PrimeTable | None = None,
) -> Ideal | FractionalIdeal:
    """Dispatch to the regular, fractional or hypersurface computation."""
    if isinstance(ring, Hypersurface):
        if delta is not None and not delta.is_zero():
            raise PreconditionError("divisors on hypersurface quotients are not supported")
        return tau_hypersurface(ring.ambient, ring.h, a=a, t=t)
    if delta is not None and not delta.is_effective():
        return tau_fractional(ring, delta, a, t, table=table)
    return tau_regular(ring, delta, a, t, table)


def is_strongly_F_regular(
    ring: Ring,
    delta: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    at_origin: bool = False,
    table: PrimeTable | None = None,
) -> bool:
    """tau_b = R, globally or (with ``at_origin``) after localising at the origin."""
    if delta is not None and not delta.is_effective():
        raise PreconditionError("strong F-regularity is defined for effective divisors")
    J = tau(ring, delta, a, t, table)
    if at_origin:
        amb = _ambient(ring)
        return (J + Ideal.maximal(amb)).is_unit()
    return J.is_unit()


@dataclass
class SharpFPureVerdict:
    value: bool
    conclusive: bool
    e: int | None
    cap: int

    def __str__(self) -> str:
        if self.value:
            return f"true (witness at e = {self.e})"
        if self.conclusive:
            return "false"
        return f"false-up-to-cap (e <= {self.cap})"


def is_sharply_F_pure(
    ring: Ring,
    delta: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    e_cap: int | None = None,
    at: Sequence[Poly] | Ideal | None = None,
) -> SharpFPureVerdict:
    """Search for a level e with u_e·(h^{q-1})·a^{ceil(t(q-1))} ⊄ m^[q] at a rational point.

    With a = R or a principal, and p-free denominators in Delta and t, the test at the period e0 is
    decisive, because every admissible map at another level composes into
    one at a multiple of e0 with a larger key.
    """
    amb = _ambient(ring)
    p = amb.p
    delta = delta if delta is not None else QDivisor.zero(amb)
    if not delta.is_effective():
        raise PreconditionError("sharp F-purity is defined for effective divisors")
    t = _t(t)
    e_cap = e_cap if e_cap is not None else limits.max_e
    point = point_of(amb, at)
    h = translate(ring.h, point) if isinstance(ring, Hypersurface) else None
    primes = {P: translate(P, point) for P in delta.coeffs}
    if a is not None and t > 0 and not a.is_unit():
        a = Ideal(amb, [translate(g, point) for g in a.gens])
    else:
        a = None

    def witness(e: int) -> bool:
        # only terms outside m^[q] matter, so every product is truncated
        q = p**e
        u = amb.one()
        for P, c in delta.coeffs.items():
            u = _truncate(u * _truncated_power(primes[P], _ceil((q - 1) * c), q), q)
        if h is not None:
            u = _truncate(u * _truncated_power(h, q - 1, q), q)
        if a is None:
            return not u.is_zero()
        n = _ceil(t * (q - 1))
        if len(a.gens) == 1:
            return not _truncate(u * _truncated_power(a.gens[0], n, q), q).is_zero()
        products = {u}
        for _ in range(n):
            products = {_truncate(f * g, q) for f in products for g in a.gens} - {amb.zero()}
            if not products:
                return False
        return True

    k, _ = _split_p_part(delta, p)
    principal = a is not None and len(a.gens) == 1 and t.denominator % p != 0
    if k == 0 and (a is None or principal):
        # a principal f^t acts like the divisor t·div(f), exact at multiples of e0
        period = delta.period()
        if principal:
            period = math.lcm(period, t.denominator)
        e0 = _order_mod(p, period)
        return SharpFPureVerdict(witness(e0), True, e0 if witness(e0) else None, e0)
    for e in range(1, e_cap + 1):
        if witness(e):
            return SharpFPureVerdict(True, True, e, e_cap)
    return SharpFPureVerdict(False, False, None, e_cap)


# -- F-pure thresholds -----------------------------------------------------------------


def _truncate(f: Poly, q: int) -> Poly:
    return Poly._raw(f.ring, {m: c for m, c in f.terms.items() if all(x < q for x in m)})


def _truncated_power(f: Poly, n: int, q: int) -> Poly:
    """f^n modulo the monomials with some exponent >= q."""
    out = f.ring.one()
    base = _truncate(f, q)
    while n:
        if n & 1:
            out = _truncate(out * base, q)
        n >>= 1
        if n:
            base = _truncate(base * base, q)
    return out


def nu_sequence(f: Poly, e_max: int) -> list[int]:
    """[nu_f(p^e) for e = 0..e_max], nu_f(q) = max{r : f^r ∉ <x_i^q>}.

    Uses nu(pq) ∈ [p·nu(q), p·nu(q) + p - 1] and keeps f^{nu(q)} modulo m^[q].
    """
    if f.is_zero():
        raise PreconditionError("f must be nonzero")
    if f.constant_coeff():
        raise PreconditionError(f"{f} is a unit at the origin")
    p = f.ring.p
    nus = [0]
    g = f.ring.one()
    q = 1
    for _ in range(e_max):
        q *= p
        g = g.frobenius(p)
        nu = nus[-1] * p
        for _ in range(p - 1):
            h = _truncate(g * f, q)
            if h.is_zero():
                break
            g, nu = h, nu + 1
        nus.append(nu)
    return nus


def fpt_truncation(f: Poly, e: int) -> Fraction:
    return Fraction(nu_sequence(f, e)[e], f.ring.p**e)


@dataclass
class FptEstimate:
    brackets: list[tuple[Fraction, Fraction]]

    @property
    def lower(self) -> Fraction:
        return self.brackets[-1][0]

    @property
    def upper(self) -> Fraction:
        return self.brackets[-1][1]

    def contains(self, x: Fraction) -> bool:
        return self.lower < x <= self.upper

    def __str__(self) -> str:
        return f"({self.lower}, {self.upper}]"


def fpt_estimate(f: Poly, e_max: int) -> FptEstimate:
    """Nested brackets (nu/q, (nu+1)/q] containing fpt(f), for e = 1..e_max."""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    p = f.ring.p
    nus = nu_sequence(f, e_max)
    return FptEstimate([(Fraction(nus[e], p**e), Fraction(nus[e] + 1, p**e)) for e in range(1, e_max + 1)])


# -- reports ---------------------------------------------------------------------------


@dataclass
class Report:
    check: str
    lhs: list[str]
    rhs: list[str]
    verdict: str
    witnesses: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "lhs_gb": self.lhs,
            "rhs_gb": self.rhs,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }

    def __str__(self) -> str:
        lines = [
            f"{self.check}: {self.verdict}",
            "  lhs: " + ", ".join(self.lhs),
            "  rhs: " + ", ".join(self.rhs),
        ]
        lines += [f"  witness: {w}" for w in self.witnesses]
        lines += [f"  {n}" for n in self.notes]
        return "\n".join(lines)


def _gb_strings(I: Ideal) -> list[str]:
    return [str(g) for g in I.gb] or ["0"]


def _compare(check: str, lhs: Ideal, rhs: Ideal, notes: list[str]) -> Report:
    witnesses = [f"{g} in lhs, not in rhs" for g in lhs.gb if not rhs.contains(g)]
    witnesses += [f"{g} in rhs, not in lhs" for g in rhs.gb if not lhs.contains(g)]
    verdict = "PASS" if not witnesses else "FAIL"
    return Report(check, _gb_strings(lhs), _gb_strings(rhs), verdict, witnesses, notes)


def _require_monogenic(ext) -> MonogenicExtension:
    if not isinstance(ext, MonogenicExtension) or not ext.identified:
        raise PreconditionError("this check needs a monogenic extension identified with a polynomial ring")
    return ext


def _base_clearing(ext: MonogenicExtension, delta_x: QDivisor, delta_y: QDivisor) -> Poly:
    """f in R making both Delta_X + div f and Delta_Y + pi^* div f effective."""
    f = default_clearing(delta_x)
    for _ in range(8):
        shifted = delta_y + ext.pullback(divisor_of(f, ext.base_table))
        neg = shifted.negative_part()
        if neg.is_zero():
            return f
        for C, c in neg.coeffs.items():
            N = ext.norm(C).monic()
            k = int(divisor_of(ext.image(N), ext.total_table).coeff(C))
            f = f * N ** _ceil(c / k)
    raise FrobtraceError("could not find a clearing element in the base")


def _extended(ext: MonogenicExtension, a: Ideal | None) -> Ideal | None:
    if a is None:
        return None
    return Ideal(ext.total, [ext.image(g) for g in a.gens])


def _prepare(ext, trace, delta_x, a, t):
    ext = _require_monogenic(ext)
    trace = trace or ext.trace_key()
    delta_x = delta_x if delta_x is not None else QDivisor.zero(ext.base)
    t = _t(t)
    delta_x, a, t = _fold(delta_x, a, t, ext.base_table)
    delta_y = ext.pullback(delta_x) - trace.divisor()
    return ext, trace, delta_x, a, t, delta_y


def verify_transformation(
    ext: MonogenicExtension,
    trace: TraceLike | None = None,
    delta_x: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
) -> Report:
    """Compare T(tau_b(Y; pi^*Delta_X - R_T, (aO_Y)^t)) with tau_b(X; Delta_X, a^t).

    Both sides are scaled by the same base element f so that the divisors
    become effective; T is R-linear, so comparing the scaled ideals decides
    equality of the fractional ones.
    """
    ext, trace, delta_x, a, t, delta_y = _prepare(ext, trace, delta_x, a, t)
    f = _base_clearing(ext, delta_x, delta_y)
    div_f = divisor_of(f, ext.base_table)
    tau_y = tau_regular(ext.total, delta_y + ext.pullback(div_f), _extended(ext, a), t)
    tau_x = tau_regular(ext.base, delta_x + div_f, a, t)
    lhs = Ideal(ext.base, [trace(ext.t_power(j) * g) for g in tau_y.gens for j in range(ext.n)])
    notes = [f"Delta_Y = {delta_y}", f"tau_Y = {FractionalIdeal(tau_y, ext.image(f))}"]
    if not f.is_constant():
        notes.append(f"both sides scaled by {f}")
    return _compare("transformation", lhs, tau_x, notes)


def contract(ext: MonogenicExtension, J: Ideal) -> Ideal:
    """J ∩ R for an ideal J of the total ring, by elimination."""
    total = ext.total
    m = total.nvars
    names = total.vars + tuple("_b_" + v for v in ext.base.vars)
    big = PolyRing(total.field, names, f"elim:{m}")
    gens = [g.to_ring(big) for g in J.gens]
    gens += [big.var("_b_" + v) - img.to_ring(big) for v, img in zip(ext.base.vars, ext.base_images)]
    renamed = PolyRing(total.field, names[m:], "grevlex")
    out = eliminate(gens, big, m, renamed)
    return Ideal(ext.base, [Poly._raw(ext.base, dict(g.terms)) for g in out])


def verify_intersection(
    ext,
    delta_x: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
) -> Report:
    """Compare K(X) ∩ tau_b(Y; pi^*Delta_X - Ram, (aO_Y)^t) with tau_b(X; Delta_X, a^t)."""
    if not ext.is_trace_surjective():
        raise PreconditionError("the trace is not surjective, so the intersection formula does not apply")
    ext, trace, delta_x, a, t, delta_y = _prepare(ext, None, delta_x, a, t)
    f = _base_clearing(ext, delta_x, delta_y)
    div_f = divisor_of(f, ext.base_table)
    tau_y = tau_regular(ext.total, delta_y + ext.pullback(div_f), _extended(ext, a), t)
    lhs = contract(ext, tau_y)
    tau_x = tau_regular(ext.base, delta_x + div_f, a, t)
    notes = [f"Delta_Y = {delta_y}"]
    if not f.is_constant():
        notes.append(f"both sides scaled by {f}")
    return _compare("intersection", lhs, tau_x, notes)


def verify_containment_extension(
    ext,
    delta_x: QDivisor | None = None,
    a: Ideal | None = None,
    t: Fraction | int = 0,
) -> Report:
    """Check tau_b(X; Delta_X, a^t)·O_Y ⊆ tau_b(Y; pi^*Delta_X - Ram, (aO_Y)^t)."""
    ext, trace, delta_x, a, t, delta_y = _prepare(ext, None, delta_x, a, t)
    if not delta_x.is_effective() or not delta_y.is_effective():
        raise PreconditionError("both Delta_X and Delta_Y must be effective")
    tau_x = tau_regular(ext.base, delta_x, a, t)
    extended = Ideal(ext.total, [ext.image(g) for g in tau_x.gens])
    tau_y = tau_regular(ext.total, delta_y, _extended(ext, a), t)
    missing = [f"{g} not in tau_Y" for g in extended.gb if not tau_y.contains(g)]
    strict = not missing and not extended.equals(tau_y)
    notes = [f"Delta_Y = {delta_y}", "strict" if strict else ("equal" if not missing else "not contained")]
    return Report(
        "containment",
        _gb_strings(extended),
        _gb_strings(tau_y),
        "PASS" if not missing else "FAIL",
        missing,
        notes,
    )


def skoda_check(
    ring: PolyRing,
    delta: QDivisor,
    f: Poly,
    a: Ideal | None = None,
    t: Fraction | int = 0,
    table: PrimeTable | None = None,
) -> Report:
    """tau(Delta + div f) = f·tau(Delta)."""
    shifted = tau(ring, delta + divisor_of(f, table), a, t, table)
    base = tau(ring, delta, a, t, table)
    if isinstance(shifted, Ideal):
        shifted = FractionalIdeal(shifted, ring.one())
    if isinstance(base, Ideal):
        base = FractionalIdeal(base, ring.one())
    lhs = shifted.numerator * base.denominator
    rhs = base.numerator * f * shifted.denominator
    return _compare("skoda", lhs, rhs, [f"tau(Delta + div f) = {shifted}", f"tau(Delta) = {base}"])
