"""p^e-basis decompositions, Frobenius roots, Cartier images and Fedder's test.

Over a polynomial ring F_p[x_1..x_n] every f can be written uniquely as
f = sum_b h_b^q x^b with 0 <= b_i < q.  The canonical p^{-e}-linear map
Phi_e picks out h_b at b = (q-1, ..., q-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import FrobtraceError, PreconditionError
from .groebner import Ideal
from .polys import Poly, PolyRing


@dataclass(frozen=True)
class PeDecomposition:
    e: int
    q: int
    parts: dict[tuple[int, ...], Poly] = field(default_factory=dict)

    def reconstruct(self, ring: PolyRing) -> Poly:
        out = ring.zero()
        for b, h in self.parts.items():
            out = out + h.frobenius(self.q) * ring.monomial(b)
        return out


def _q(ring: PolyRing, e: int) -> int:
    if e < 0:
        raise ValueError("Frobenius level e must be nonnegative")
    return ring.p**e


def decompose_by_q(f: Poly, q: int) -> dict[tuple[int, ...], dict]:
    """Raw term maps of the parts h_b (internal helper)."""
    parts: dict[tuple[int, ...], dict] = {}
    for m, c in f.terms.items():
        b = tuple(x % q for x in m)
        parts.setdefault(b, {})[tuple(x // q for x in m)] = c
    return parts


def pe_decompose(f: Poly, e: int) -> PeDecomposition:
    q = _q(f.ring, e)
    parts = {b: Poly._raw(f.ring, t) for b, t in decompose_by_q(f, q).items()}
    dec = PeDecomposition(e, q, parts)
    if e <= 3 and dec.reconstruct(f.ring) != f:
        raise FrobtraceError("p^e decomposition failed to reconstruct its input")
    return dec


def frob_root(I: Ideal, e: int) -> Ideal:
    """I^[1/q]: the smallest ideal J with I ⊆ J^[q]."""
    q = _q(I.ring, e)
    if q == 1:
        return Ideal(I.ring, I.gb)
    gens = []
    for g in I.gb:
        gens.extend(Poly._raw(I.ring, t) for t in decompose_by_q(g, q).values())
    return Ideal(I.ring, gens)


def cartier_apply(u: Poly, e: int, I: Ideal) -> Ideal:
    """(u·I)^[1/q], the image of I under phi_u."""
    if u.is_zero():
        raise ValueError("the key of a p^{-e}-linear map must be nonzero")
    return frob_root(I * u, e)


def apply_pmap(u: Poly, e: int, g: Poly) -> Poly:
    """phi_u(g^{1/q}) = Phi_e((u g)^{1/q})."""
    ring = u.ring
    q = _q(ring, e)
    p = ring.p
    top = q - 1
    out: dict = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            if all(x % q == top for x in m):
                k = tuple(x // q for x in m)
                out[k] = (out.get(k, 0) + c1 * c2) % p
    return Poly._raw(ring, {m: c for m, c in out.items() if c})


def in_monomial_bracket(f: Poly, q: int) -> bool:
    """Membership of f in <x_1^q, ..., x_n^q>, decided termwise."""
    return all(any(x >= q for x in m) for m in f.terms)


def bracket_power(I: Ideal, e: int) -> Ideal:
    return I.bracket(_q(I.ring, e))


def point_of(ring: PolyRing, at: Sequence[Poly] | Ideal | None) -> list[int]:
    """Coordinates c of a maximal ideal <x_i - c_i>; None means the origin."""
    if at is None:
        return [0] * ring.nvars
    gens = at.gens if isinstance(at, Ideal) else list(at)
    point: list[int | None] = [None] * ring.nvars
    for g in gens:
        if g.degree() != 1 or len(g.used_vars()) != 1:
            raise PreconditionError(f"{g} is not of the form x_i - c")
        (i,) = g.used_vars()
        lin = [0] * ring.nvars
        lin[i] = 1
        a = g.coeff(lin)
        c = (-g.constant_coeff() * ring.field.inv(a)) % ring.p
        if point[i] is not None and point[i] != c:
            raise PreconditionError("inconsistent generators for the maximal ideal")
        point[i] = c
    if any(c is None for c in point):
        raise PreconditionError("the given ideal is not a maximal ideal of an F_p-point")
    return point  # type: ignore[return-value]


def translate(f: Poly, point: Sequence[int]) -> Poly:
    """f(x + c), moving the point c to the origin."""
    if not any(point):
        return f
    ring = f.ring
    return f.substitute([v + c for v, c in zip(ring.gens(), point)], ring)


def fedder_test(h: Poly | Ideal, at: Sequence[Poly] | Ideal | None = None) -> bool:
    """F-purity of A/I at a rational point via Fedder's criterion.

    For a principal I = <h> this is h^{p-1} ∉ m^[p]; in general
    (I^[p] : I) ⊄ m^[p].
    """
    if isinstance(h, Poly):
        ring = h.ring
        point = point_of(ring, at)
        h = translate(h, point)
        if h.is_zero():
            return False
        if h.constant_coeff():
            raise PreconditionError("the point does not lie on the hypersurface")
        return not in_monomial_bracket(h ** (ring.p - 1), ring.p)
    I = h
    ring = I.ring
    point = point_of(ring, at)
    I = Ideal(ring, [translate(g, point) for g in I.gens])
    if I.is_zero():
        return True
    if any(g.constant_coeff() for g in I.gb):
        raise PreconditionError("the point does not lie on V(I)")
    colon = I.bracket(ring.p).colon(I)
    return not all(in_monomial_bracket(g, ring.p) for g in colon.gb)
