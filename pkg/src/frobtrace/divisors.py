"""Q-divisors over declared prime tables.

A divisor is a finite formal sum of monic prime polynomials with exact
rational coefficients.  Univariate polynomials are factored on demand;
multivariate ones must be covered by the primes a user declares.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import FrobtraceError, ParseError, RingMismatch, UncoveredFactor
from .factor import is_irreducible, univariate_factor
from .polys import Poly, PolyRing, parse_poly, valuation


def _prime_sort_key(P: Poly):
    return (P.degree(), str(P))


class PrimeTable:
    """An ordered list of pairwise distinct monic primes of one ring.

    Univariate entries are checked for irreducibility; multivariate entries
    are taken on trust and flagged as asserted.
    """

    def __init__(self, ring: PolyRing, primes: Iterable[Poly] = ()):
        self.ring = ring
        self.primes: list[Poly] = []
        self.asserted: list[bool] = []
        for P in primes:
            self.add(P)

    def add(self, P: Poly) -> Poly:
        if P.ring != self.ring:
            raise RingMismatch(f"{P} is not in {self.ring}")
        if P.is_constant():
            raise FrobtraceError(f"{P} is a unit, not a prime")
        P = P.monic()
        if P in self.primes:
            return P
        univariate = P.is_univariate()
        if univariate and not is_irreducible(P):
            raise FrobtraceError(f"{P} is not irreducible")
        self.primes.append(P)
        self.asserted.append(not univariate)
        return P

    def copy(self) -> PrimeTable:
        t = PrimeTable(self.ring)
        t.primes = list(self.primes)
        t.asserted = list(self.asserted)
        return t

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, P: Poly) -> bool:
        return P.monic() in self.primes

    def __str__(self) -> str:
        return "{" + ", ".join(str(P) for P in self.primes) + "}"


@dataclass(frozen=True)
class QDivisor:
    ring: PolyRing
    coeffs: Mapping[Poly, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Poly, Fraction] = {}
        for P, c in self.coeffs.items():
            if P.ring != self.ring:
                raise RingMismatch(f"prime {P} is not in {self.ring}")
            c = Fraction(c)
            if c:
                P = P.monic()
                clean[P] = clean.get(P, Fraction(0)) + c
        clean = {P: c for P, c in sorted(clean.items(), key=lambda t: _prime_sort_key(t[0])) if c}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, ring: PolyRing) -> QDivisor:
        return cls(ring, {})

    @classmethod
    def prime(cls, P: Poly, c: Fraction | int = 1) -> QDivisor:
        return cls(P.ring, {P: Fraction(c)})

    def coeff(self, P: Poly) -> Fraction:
        return self.coeffs.get(P.monic(), Fraction(0))

    @property
    def support(self) -> list[Poly]:
        return list(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: QDivisor) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"divisors over {self.ring} and {other.ring}")

    def __add__(self, other: QDivisor) -> QDivisor:
        self._check(other)
        out = dict(self.coeffs)
        for P, c in other.coeffs.items():
            out[P] = out.get(P, Fraction(0)) + c
        return QDivisor(self.ring, out)

    def __neg__(self) -> QDivisor:
        return QDivisor(self.ring, {P: -c for P, c in self.coeffs.items()})

    def __sub__(self, other: QDivisor) -> QDivisor:
        return self + (-other)

    def __mul__(self, k: Fraction | int) -> QDivisor:
        k = Fraction(k)
        return QDivisor(self.ring, {P: c * k for P, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, k: Fraction | int) -> QDivisor:
        return self * (1 / Fraction(k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self.coeffs.items())))

    def ceil(self) -> QDivisor:
        return QDivisor(self.ring, {P: Fraction(math.ceil(c)) for P, c in self.coeffs.items()})

    def floor(self) -> QDivisor:
        return QDivisor(self.ring, {P: Fraction(math.floor(c)) for P, c in self.coeffs.items()})

    def round(self, mode: str) -> QDivisor:
        if mode == "ceil":
            return self.ceil()
        if mode == "floor":
            return self.floor()
        raise ValueError(f"unknown rounding mode {mode!r}")

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def compare(self, other: QDivisor) -> str:
        """One of ``equal``, ``geq``, ``leq``, ``incomparable`` (componentwise)."""
        diff = self - other
        if diff.is_zero():
            return "equal"
        if diff.is_effective():
            return "geq"
        if (-diff).is_effective():
            return "leq"
        return "incomparable"

    def __ge__(self, other: QDivisor) -> bool:
        return (self - other).is_effective()

    def __le__(self, other: QDivisor) -> bool:
        return (other - self).is_effective()

    def positive_part(self) -> QDivisor:
        return QDivisor(self.ring, {P: c for P, c in self.coeffs.items() if c > 0})

    def negative_part(self) -> QDivisor:
        """The effective divisor -min(D, 0)."""
        return QDivisor(self.ring, {P: -c for P, c in self.coeffs.items() if c < 0})

    def to_poly(self) -> Poly:
        """prod P^c for an effective integral divisor."""
        if not self.is_integral() or not self.is_effective():
            raise FrobtraceError(f"{self} is not an effective integral divisor")
        out = self.ring.one()
        for P, c in self.coeffs.items():
            out = out * P ** int(c)
        return out

    def period(self) -> int:
        """Least common denominator of the coefficients."""
        d = 1
        for c in self.coeffs.values():
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def __str__(self) -> str:
        return format_divisor(self)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_divisor(D: QDivisor) -> str:
    if D.is_zero():
        return "0"
    out = ""
    for i, (P, c) in enumerate(D.coeffs.items()):
        body = f"{_format_coeff(abs(c))}[{P}]"
        if i == 0:
            out = body if c > 0 else f"-{body}"
        else:
            out += f" + {body}" if c > 0 else f" - {body}"
    return out


_DIV_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*\[")


def parse_divisor(ring: PolyRing, text: str) -> QDivisor:
    """Parse ``2[x] + 1/2[x^3 + 1] - 1[y]``; a bare ``0`` is the zero divisor."""
    s = text.strip()
    if s == "0" or not s:
        return QDivisor.zero(ring)
    pos = 0
    out = QDivisor.zero(ring)
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _DIV_TERM.match(text, pos)
        if m is None:
            raise ParseError("expected a divisor term like 2[x]", pos)
        sign, coeff = m.group(1), m.group(2)
        if sign is None and not first:
            raise ParseError("expected '+' or '-' between divisor terms", m.start())
        depth, j = 1, m.end()
        while j < len(text) and depth:
            depth += {"[": 1, "]": -1}.get(text[j], 0)
            j += 1
        if depth:
            raise ParseError("unclosed '['", m.end() - 1)
        inner = text[m.end():j - 1]
        try:
            P = parse_poly(ring, inner)
        except ParseError as exc:
            offset = m.end() + (exc.pos or 0)
            raise type(exc)(str(exc).rsplit(" at position", 1)[0], offset) from None
        if P.is_constant():
            raise ParseError(f"[{inner}] is a unit, not a prime", m.end())
        if P.is_univariate() and not is_irreducible(P):
            raise ParseError(f"[{inner}] is not irreducible", m.end())
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        out = out + QDivisor.prime(P, c)
        first = False
        pos = j
    return out


def divisor_of(f: Poly, table: PrimeTable | None = None) -> QDivisor:
    """div(f): orders of vanishing along the table primes.

    Univariate f is factored directly.  Otherwise every table prime is divided
    out and the residual must be a nonzero constant.
    """
    if f.is_zero():
        raise FrobtraceError("the divisor of 0 is undefined")
    if table is not None and table.ring != f.ring:
        raise RingMismatch(f"{f.ring} vs {table.ring}")
    if f.is_univariate():
        return QDivisor(f.ring, {P: Fraction(m) for P, m in univariate_factor(f)})
    coeffs = {}
    residual = f
    for P in table or ():
        k, residual = valuation(residual, P)
        if k:
            coeffs[P] = Fraction(k)
    if not residual.is_constant():
        # a univariate leftover can still be factored
        if residual.is_univariate():
            for P, m in univariate_factor(residual):
                coeffs[P] = coeffs.get(P, Fraction(0)) + m
        else:
            raise UncoveredFactor(residual)
    return QDivisor(f.ring, coeffs)


def divisor_cmp(D: QDivisor, E: QDivisor) -> str:
    return D.compare(E)


def is_effective(D: QDivisor) -> bool:
    return D.is_effective()


def pullback(ext, D: QDivisor) -> QDivisor:
    """pi^*D for an extension exposing ``image`` (base -> total) and ``total_table``."""
    if D.ring != ext.base:
        raise RingMismatch("divisor does not live on the base ring")
    out = QDivisor.zero(ext.total)
    for P, c in D.coeffs.items():
        out = out + divisor_of(ext.image(P), ext.total_table) * c
    return out


def ramification_index(ext, P: Poly, C: Poly) -> int:
    """ord_C of the image of the base prime P."""
    return valuation(ext.image(P), C.monic())[0]
