"""Reduced Groebner bases (Buchberger) and the ideal operations built on them."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ResourceExceeded, RingMismatch
from .polys import Poly, PolyRing, divides_exp, exact_div


@dataclass
class Limits:
    step_cap: int = 10**6
    max_e: int = 8
    seed: int = 0


limits = Limits()


@contextlib.contextmanager
def configured(**overrides) -> Iterator[Limits]:
    """Temporarily override the global resource limits."""
    saved = {k: getattr(limits, k) for k in overrides}
    for k, v in overrides.items():
        if v is not None:
            setattr(limits, k, v)
    try:
        yield limits
    finally:
        for k, v in saved.items():
            setattr(limits, k, v)


class _Budget:
    __slots__ = ("left",)

    def __init__(self):
        self.left = limits.step_cap

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceExceeded(f"Groebner basis step cap {limits.step_cap} exceeded")


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _reduce(f: dict, basis: Sequence[tuple[tuple[int, ...], list]], ring: PolyRing, budget: _Budget, full: bool = True) -> dict:
    """Remainder of the term map ``f`` against monic basis entries (lm, terms).

    With ``full`` every term is reduced, otherwise only the leading term is
    driven down until it is irreducible.
    """
    p = ring.p
    key = ring.sort_key
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, terms in basis:
            if divides_exp(lm, m):
                budget.spend()
                shift = tuple(x - y for x, y in zip(m, lm))
                for tm, tc in terms:
                    mm = tuple(x + y for x, y in zip(tm, shift))
                    v = (f.get(mm, 0) - c * tc) % p
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


def _entry(poly_terms: dict, ring: PolyRing) -> tuple[tuple[int, ...], list]:
    key = ring.sort_key
    lm = max(poly_terms, key=key)
    inv = ring.field.inv(poly_terms[lm])
    p = ring.p
    return lm, [(m, c * inv % p) for m, c in poly_terms.items()]


def buchberger(gens: Iterable[Poly], ring: PolyRing) -> list[Poly]:
    """Reduced monic Groebner basis, sorted by decreasing leading monomial."""
    key = ring.sort_key
    budget = _Budget()
    basis: list[tuple[tuple[int, ...], list]] = []
    pairs: set[tuple[int, int]] = set()
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
        r = _reduce(g.terms, basis, ring, budget)
        if r:
            _add_element(basis, pairs, _entry(r, ring))
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pairs.discard((i, j))
        lmi, ti = basis[i]
        lmj, tj = basis[j]
        lcm = _lcm(lmi, lmj)
        if all(x == 0 or y == 0 for x, y in zip(lmi, lmj)):
            continue
        if _chain_skip(basis, pairs, i, j, lcm):
            continue
        s = _spoly(ti, lmi, tj, lmj, lcm, ring.p)
        r = _reduce(s, basis, ring, budget)
        if r:
            _add_element(basis, pairs, _entry(r, ring))
    return _interreduce(basis, ring, budget)


def _chain_skip(basis, pairs, i, j, lcm) -> bool:
    for k, (lmk, _) in enumerate(basis):
        if k in (i, j) or not divides_exp(lmk, lcm):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def _spoly(ti, lmi, tj, lmj, lcm, p) -> dict:
    out: dict = {}
    si = tuple(x - y for x, y in zip(lcm, lmi))
    sj = tuple(x - y for x, y in zip(lcm, lmj))
    for m, c in ti:
        mm = tuple(x + y for x, y in zip(m, si))
        out[mm] = (out.get(mm, 0) + c) % p
    for m, c in tj:
        mm = tuple(x + y for x, y in zip(m, sj))
        out[mm] = (out.get(mm, 0) - c) % p
    return {m: c for m, c in out.items() if c}


def _add_element(basis, pairs, entry) -> None:
    n = len(basis)
    basis.append(entry)
    for i in range(n):
        pairs.add((i, n))


def _interreduce(basis, ring: PolyRing, budget: _Budget) -> list[Poly]:
    key = ring.sort_key
    lms = [lm for lm, _ in basis]
    keep = []
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if j != i and divides_exp(other, lm) and (other != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(basis[i])
    keep.sort(key=lambda e: key(e[0]))
    out: list[Poly] = []
    for idx, (lm, terms) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = {m: c for m, c in terms if m != lm}
        r = _reduce(tail, others, ring, budget)
        r[lm] = 1
        out.append(Poly._raw(ring, r))
    out.sort(key=lambda f: key(f.lm), reverse=True)
    return out


class Ideal:
    """Generators in a polynomial ring with a lazily cached reduced GB."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: PolyRing, gens: Iterable[Poly | int] = ()):
        clean = []
        for g in gens:
            if isinstance(g, int):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatch(f"generator {g} lives in {g.ring}, not {ring}")
            if not g.is_zero():
                clean.append(g)
        self.ring = ring
        self.gens: tuple[Poly, ...] = tuple(clean)
        self._gb: tuple[Poly, ...] | None = None

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolyRing) -> Ideal:
        return cls(ring, ring.gens())

    @property
    def gb(self) -> tuple[Poly, ...]:
        if self._gb is None:
            self._gb = tuple(buchberger(self.gens, self.ring))
        return self._gb

    def _basis_entries(self):
        return [(g.lm, list(g.terms.items())) for g in self.gb]

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        return Poly._raw(self.ring, _reduce(f.terms, self._basis_entries(), self.ring, _Budget()))

    def contains(self, f: Poly | int) -> bool:
        if isinstance(f, int):
            f = self.ring.const(f)
        return self.reduce(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def equals(self, other: Ideal) -> bool:
        self._check(other)
        return self.gb == other.gb

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self) -> int:
        return hash((self.ring, self.gb))

    def _check(self, other: Ideal) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: Ideal | Poly) -> Ideal:
        if isinstance(other, Poly):
            return Ideal(self.ring, [g * other for g in self.gens])
        self._check(other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    __rmul__ = __mul__

    def minimal(self) -> Ideal:
        """Same ideal, generated by its reduced GB (keeps products small)."""
        out = Ideal(self.ring, self.gb)
        out._gb = self.gb
        return out

    def power(self, n: int) -> Ideal:
        if n < 0:
            raise ValueError("ideal power must be nonnegative")
        result = Ideal.unit(self.ring)
        base = self.minimal()
        while n:
            if n & 1:
                result = (result * base).minimal()
            n >>= 1
            if n:
                base = (base * base).minimal()
        return result

    def bracket(self, q: int) -> Ideal:
        """Frobenius power I^[q] = <g^q>, q a power of p."""
        return Ideal(self.ring, [g.frobenius(q) for g in self.gens])

    def intersect(self, other: Ideal) -> Ideal:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring)
        ring = self.ring
        aux = _fresh_name(ring.vars, "t")
        big = PolyRing(ring.field, (aux,) + ring.vars, "elim:1")
        t = big.var(aux)
        gens = [t * g.to_ring(big) for g in self.gens]
        gens += [(1 - t) * g.to_ring(big) for g in other.gens]
        return Ideal(ring, eliminate(gens, big, 1, ring))

    def colon(self, f: Poly | Ideal) -> Ideal:
        """(I : f) computed as (1/f)(I ∩ <f>); for an ideal, the intersection of element colons."""
        if isinstance(f, Ideal):
            self._check(f)
            if f.is_zero():
                return Ideal.unit(self.ring)
            out = None
            for g in f.gens:
                c = self.colon(g)
                out = c if out is None else out.intersect(c)
            return out
        if f.is_zero():
            raise ValueError("colon by the zero polynomial")
        inter = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring, [exact_div(g, f) for g in inter.gb])

    def to_ring(self, target: PolyRing) -> Ideal:
        return Ideal(target, [g.to_ring(target) for g in self.gens])

    def __str__(self) -> str:
        return format_ideal(self)

    def __repr__(self) -> str:
        return f"Ideal({format_ideal(self)} in {self.ring})"


def format_ideal(I: Ideal) -> str:
    if I.is_zero():
        return "⟨0⟩"
    return "⟨" + ", ".join(str(g) for g in I.gb) + "⟩"


def _fresh_name(taken: Sequence[str], stem: str) -> str:
    name = f"_{stem}"
    i = 0
    while name in taken:
        i += 1
        name = f"_{stem}{i}"
    return name


def fresh_name(taken: Sequence[str], stem: str) -> str:
    return _fresh_name(taken, stem)


def eliminate(gens: Sequence[Poly], big: PolyRing, k: int, target: PolyRing) -> list[Poly]:
    """Generators of <gens> ∩ F_p[last vars of ``big``], mapped into ``target``.

    ``big`` must carry the block order ``elim:k`` whose first ``k`` variables
    are eliminated.
    """
    if big.order != f"elim:{k}":
        big = big.with_order(f"elim:{k}")
        gens = [g.to_ring(big) for g in gens]
    basis = buchberger(gens, big)
    out = []
    for g in basis:
        if all(not any(m[:k]) for m in g.terms):
            out.append(g.to_ring(target))
    return out


def normal_form(f: Poly, I: Ideal) -> Poly:
    return I.reduce(f)


def ideal_membership(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)


def groebner_basis(I: Ideal) -> list[Poly]:
    return list(I.gb)
