"""p^{-e}-linear maps as key elements, their divisors, iteration and transposes.

A map on a polynomial ring is stored as its key u, meaning
phi(g^{1/q}) = Phi_e((u g)^{1/q}) with Phi_e the canonical generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .divisors import PrimeTable, QDivisor, divisor_of
from .errors import FrobtraceError, NonIntegral, NonMonogenic, RingMismatch
from .extension import MonogenicExtension, TraceLike
from .factor import poly_gcd
from .frobenius import apply_pmap
from .groebner import limits
from .linalg import cramer
from .polys import MAX_EXPONENT, Poly, PolyRing, exact_div, try_div


@dataclass(frozen=True)
class PMapKey:
    ring: PolyRing
    e: int
    u: Poly

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("Frobenius level e must be at least 1")
        if self.u.ring != self.ring:
            raise RingMismatch(f"key {self.u} is not in {self.ring}")
        if self.u.is_zero():
            raise FrobtraceError("the zero map has no key; keys must be nonzero")

    @classmethod
    def of(cls, u: Poly, e: int = 1) -> PMapKey:
        return cls(u.ring, e, u)

    @property
    def q(self) -> int:
        return self.ring.p**self.e

    def __call__(self, g: Poly) -> Poly:
        """phi(g^{1/q})."""
        return apply_pmap(self.u, self.e, g)

    def __str__(self) -> str:
        return f"key {self.u} at e={self.e}"


def delta_of_key(phi: PMapKey, table: PrimeTable | None = None) -> QDivisor:
    """Delta_phi = div(u) / (q - 1)."""
    return divisor_of(phi.u, table) / (phi.q - 1)


def _valid_level(delta: QDivisor, e: int) -> bool:
    q = delta.ring.p**e
    return all(((q - 1) * c).denominator == 1 and c >= 0 for c in delta.coeffs.values())


def key_of_delta(delta: QDivisor, e: int, cap: int | None = None) -> PMapKey:
    """The key u = prod P^{(q-1) coeff_P}; inverse of :func:`delta_of_key`."""
    ring = delta.ring
    if not delta.is_effective():
        raise NonIntegral(f"{delta} is not effective", None)
    if not _valid_level(delta, e):
        cap = cap if cap is not None else limits.max_e
        valid = next((k for k in range(1, cap + 1) if _valid_level(delta, k)), None)
        msg = f"(p^{e} - 1)·({delta}) is not integral"
        if valid is not None:
            msg += f"; the smallest valid level is e = {valid}"
        raise NonIntegral(msg, valid)
    q = ring.p**e
    return PMapKey(ring, e, ((q - 1) * delta).to_poly())


def iterate_map(phi: PMapKey, n: int) -> PMapKey:
    """phi^n = phi ∘ F_*phi^{n-1}, with key u^{1 + q + ... + q^{n-1}} at level n·e."""
    if n < 1:
        raise ValueError("iteration count must be at least 1")
    q = phi.q
    k = (q**n - 1) // (q - 1)
    if phi.u.degree() * k > MAX_EXPONENT:
        raise OverflowError("exponent overflow while iterating the map")
    return PMapKey(phi.ring, phi.e * n, phi.u**k)


def key_from_values(ring: PolyRing, e: int, values: dict[tuple[int, ...], Poly]) -> PMapKey:
    """The map with phi(x^{b/q}) = values[b] for every basis exponent 0 <= b_i < q.

    Since Phi_e(x^{c/q}) is 1 exactly at c = (q-1, ..., q-1) and 0 at the
    other basis exponents, u = sum_b values[b]^q x^{(q-1) - b}.
    """
    q = ring.p**e
    u = ring.zero()
    for b, v in values.items():
        if len(b) != ring.nvars or any(not 0 <= x < q for x in b):
            raise FrobtraceError(f"{b} is not a basis exponent for q = {q}")
        u = u + v.frobenius(q) * ring.monomial([q - 1 - x for x in b])
    return PMapKey(ring, e, u)


# -- transposes ------------------------------------------------------------------------


def spanning_set(ext: MonogenicExtension, q: int) -> list[Poly]:
    """Elements b with {b^{1/q}} an R-basis of S^{1/q}: T^{iq} x^beta, 0 <= beta_j < q."""
    total = ext.total
    out = []
    for i in range(ext.n):
        ti = ext.t_power(i * q)
        for beta in itertools.product(range(q), repeat=total.nvars):
            out.append(ti * total.monomial(beta))
    return out


def comparison_element(ext: MonogenicExtension, e: int) -> tuple[Poly, Poly]:
    """w = num/den with Psi∘Phi_S = Phi_R∘Psi^{1/q}(w^{1/q}·).

    Writing w^{1/q} = sum_k c_k b_k^{1/q} over the spanning set turns the
    defining identity into the linear system G c = r with
    G_jk = Phi_R(Psi(b_j b_k)^{1/q}) and r_j = Psi(Phi_S(b_j^{1/q})).
    """
    cache = ext.__dict__.setdefault("_w_cache", {})
    if e in cache:
        return cache[e]
    if not ext.identified:
        raise NonMonogenic("transposes need S identified with a polynomial ring")
    q = ext.base.p**e
    basis = spanning_set(ext, q)
    one_r = ext.base.one()
    one_s = ext.total.one()
    gram = [[apply_pmap(one_r, e, ext.psi(bj * bk)) for bk in basis] for bj in basis]
    rhs = [ext.psi(apply_pmap(one_s, e, bj)) for bj in basis]
    nums, det = cramer(gram, rhs)
    num = ext.total.zero()
    for c, b in zip(nums, basis):
        num = num + ext.image(c).frobenius(q) * b
    den = ext.image(det).frobenius(q)
    num, den = _lowest_terms(num, den)
    cache[e] = (num, den)
    return num, den


def _lowest_terms(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_univariate() and den.is_univariate():
        g = poly_gcd(num, den)
        num, den = exact_div(num, g), exact_div(den, g)
    else:
        q = try_div(num, den)
        if q is not None:
            num, den = q, den.ring.one()
    if den.is_constant():
        inv = den.ring.field.inv(den.constant_coeff())
        return num.scale(inv), den.ring.one()
    lc_inv = den.ring.field.inv(den.lc)
    return num.scale(lc_inv), den.scale(lc_inv)


@dataclass
class TransposeResult:
    exists: bool
    key_numer: Poly
    key_denom: Poly
    delta: QDivisor
    e: int = 1

    @property
    def key(self) -> PMapKey:
        if not self.exists:
            raise FrobtraceError("the map does not extend; there is no transpose key")
        return PMapKey(self.key_numer.ring, self.e, self.key_numer)

    def __str__(self) -> str:
        if self.exists:
            return f"exists: true\nkey: {self.key_numer}\ndelta: {self.delta}"
        return f"exists: false\nkey: ({self.key_numer})/({self.key_denom})\ndelta: {self.delta}"


def transpose_key(ext: MonogenicExtension, phi: PMapKey, trace: TraceLike | None = None) -> TransposeResult:
    """The map phi_T on S with T∘phi_T = phi∘T^{1/q}, as an exact key fraction.

    With T = Psi(s·) the key is y = u·s^{1-q}·w^{-1}; the transpose exists
    exactly when this fraction lies in S.
    """
    if not isinstance(ext, MonogenicExtension) or not ext.identified:
        raise NonMonogenic("transposes are computed for monogenic extensions identified with a polynomial ring")
    if phi.ring != ext.base:
        raise RingMismatch("the map must live on the base ring")
    trace = trace or ext.trace_key()
    e, q = phi.e, phi.q
    w_num, w_den = comparison_element(ext, e)
    s_den = ext.image(trace.den) if trace.den is not None else ext.total.one()
    numer = ext.image(phi.u) * w_den * s_den ** (q - 1)
    denom = trace.num ** (q - 1) * w_num
    numer, denom = _lowest_terms(numer, denom)
    delta = ext.pullback(delta_of_key(phi, ext.base_table)) - trace.divisor()
    exists = denom.is_constant()
    result = TransposeResult(exists, numer, denom, delta, e)
    if exists:
        if not delta.is_effective():
            raise FrobtraceError("internal check failed: transpose exists but its divisor is not effective")
        ok, witness = commute_check(ext, phi, PMapKey(ext.total, e, numer), trace)
        if not ok:
            raise FrobtraceError(f"internal check failed: transpose does not commute at {witness}")
        if delta_of_key(result.key, ext.total_table) != delta:
            raise FrobtraceError("internal check failed: transpose divisor law")
    elif delta.is_effective():
        raise FrobtraceError("internal check failed: divisor criterion and key membership disagree")
    return result


@dataclass
class Witness:
    element: Poly
    q: int
    via_base: Poly
    via_total: Poly

    def __str__(self) -> str:
        return f"at ({self.element})^(1/{self.q}): phi(T^(1/q)(.)) = {self.via_base} vs T(phibar(.)) = {self.via_total}"


def commute_check(
    ext: MonogenicExtension,
    phi: PMapKey,
    phibar: PMapKey,
    psi: TraceLike | None = None,
) -> tuple[bool, Witness | None]:
    """Whether psi∘phibar = phi∘psi^{1/q} on the spanning set; returns the first failure."""
    if phi.e != phibar.e:
        raise FrobtraceError("the two maps must have the same Frobenius level")
    if phibar.ring != ext.total or phi.ring != ext.base:
        raise RingMismatch("phi must live on the base ring and phibar on the total ring")
    psi = psi or ext.trace_key()
    q = phi.q
    for b in spanning_set(ext, q):
        lhs = psi(phibar(b))
        rhs = phi(psi(b))
        if lhs != rhs:
            return False, Witness(b, q, rhs, lhs)
    return True, None
