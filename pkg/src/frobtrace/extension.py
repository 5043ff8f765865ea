"""Finite extensions R ⊆ S: traces, trace keys, ramification and surjectivity.

Two shapes are supported.  A monogenic extension is S = R[T]/(g) with g monic
in T, usually identified with a polynomial ring through images of T and of
the base variables.  A presented extension is S = A/I for an ambient ring A
containing the base variables, with a declared basis of Frac(S) over Frac(R).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .divisors import PrimeTable, QDivisor, divisor_of, pullback
from .errors import (
    FrobtraceError,
    Inconclusive,
    PreconditionError,
    RingMismatch,
    ZeroTrace,
)
from .groebner import Ideal, eliminate
from .linalg import bareiss_det, fp_nullspace, fp_solve
from .polys import Poly, PolyRing, exact_div


def _rename(ring: PolyRing, prefix: str) -> tuple[str, ...]:
    return tuple(prefix + v for v in ring.vars)


class MonogenicExtension:
    kind = "monogenic"

    def __init__(
        self,
        base: PolyRing,
        g: Poly,
        total: PolyRing | None = None,
        t_image: Poly | None = None,
        base_images: Sequence[Poly] | None = None,
    ):
        if g.ring.vars[1:] != base.vars or g.ring.order != "lex":
            raise RingMismatch("g must live in F_p[T, base vars] with lex order")
        self.base = base
        self.g = g
        self.gring = g.ring
        self.tname = g.ring.vars[0]
        n = g.degree_in(0)
        if n < 1:
            raise FrobtraceError("g must have positive degree in T")
        top = [(m, c) for m, c in g.terms.items() if m[0] == n]
        if len(top) != 1 or any(top[0][0][1:]) or top[0][1] != 1:
            raise FrobtraceError(f"g = {g} is not monic in {self.tname}")
        self.n = n
        self.gprime = g.derivative(0)
        self.separable = not self.gprime.is_zero()
        self.base_relations = Ideal(base)
        self._g_ideal = Ideal(self.gring, [g])
        self._g_ideal._gb = (g,)
        self.total = total
        self.t_image = t_image
        self.base_images = list(base_images) if base_images is not None else None
        if total is not None:
            if t_image is None or self.base_images is None or len(self.base_images) != base.nvars:
                raise FrobtraceError("identification needs images of T and of every base variable")
            check = g.substitute([t_image] + self.base_images, total)
            if not check.is_zero():
                raise FrobtraceError(f"identification fails the relation check: g(image) = {check}")
            self.total_table = PrimeTable(total)
        self.base_table = PrimeTable(base)

    # -- conversions ---------------------------------------------------------

    @property
    def identified(self) -> bool:
        return self.total is not None

    def _need_total(self) -> PolyRing:
        if self.total is None:
            raise PreconditionError("this operation needs an identification of S with a polynomial ring")
        return self.total

    def image(self, f: Poly) -> Poly:
        """Image of a base element in the total ring."""
        if f.ring != self.base:
            raise RingMismatch(f"{f} is not in the base ring {self.base}")
        if self.total is None:
            return f.to_ring(self.gring)
        return f.substitute(self.base_images, self.total)

    def from_g(self, f: Poly) -> Poly:
        if self.total is None:
            return self._g_ideal.reduce(f)
        return f.substitute([self.t_image] + self.base_images, self.total)

    def t_power(self, i: int) -> Poly:
        if self.total is None:
            return self.gring.var(self.tname) ** i
        return self.t_image**i

    @cached_property
    def _coord_data(self):
        total = self._need_total()
        m = total.nvars
        names = total.vars + ("_T",) + _rename(self.base, "_b_")
        big = PolyRing(total.field, names, f"elim:{m}")
        gens = [big.var("_T") - self.t_image.to_ring(big)]
        for v, img in zip(self.base.vars, self.base_images):
            gens.append(big.var("_b_" + v) - img.to_ring(big))
        I = Ideal(big, gens)
        return big, I

    def _to_g(self, f: Poly) -> Poly:
        """A representative of f in F_p[T, base vars] of T-degree < n."""
        if f.ring == self.gring:
            return self._g_ideal.reduce(f)
        if self.total is None or f.ring != self.total:
            raise RingMismatch(f"{f} is not an element of the extension ring")
        big, I = self._coord_data
        r = I.reduce(f.to_ring(big))
        m = self.total.nvars
        if any(any(e[:m]) for e in r.terms):
            raise FrobtraceError(f"{f} is not in the span of the power basis")
        g = Poly._raw(self.gring, {e[m:]: c for e, c in r.terms.items()})
        return self._g_ideal.reduce(g)

    def coords(self, f: Poly) -> list[Poly]:
        """Coordinates of f on the power basis 1, T, ..., T^{n-1}."""
        g = self._to_g(f)
        parts: list[dict] = [{} for _ in range(self.n)]
        for e, c in g.terms.items():
            parts[e[0]][e[1:]] = c
        return [Poly._raw(self.base, d) for d in parts]

    def from_coords(self, cs: Sequence[Poly]) -> Poly:
        out = None
        for i, c in enumerate(cs):
            term = self.image(c) * self.t_power(i)
            out = term if out is None else out + term
        return out

    def psi(self, f: Poly) -> Poly:
        """The canonical generator of Hom_R(S, R): the T^{n-1} coordinate."""
        return self.coords(f)[self.n - 1]

    def element_ring(self) -> PolyRing:
        return self.total if self.total is not None else self.gring

    # -- trace ---------------------------------------------------------------

    def mult_matrix(self, a: Poly) -> list[list[Poly]]:
        cols = [self.coords(a * self.t_power(j)) for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def trace(self, a: Poly) -> Poly:
        out = self.base.zero()
        for j in range(self.n):
            out = out + self.coords(a * self.t_power(j))[j]
        return out

    def norm(self, a: Poly) -> Poly:
        return bareiss_det(self.mult_matrix(a))

    def trace_matrix(self) -> list[list[Poly]]:
        """Gram matrix Tr(T^i T^j) of the trace form on the power basis."""
        return [[self.trace(self.t_power(i + j)) for j in range(self.n)] for i in range(self.n)]

    @cached_property
    def _trace_key(self) -> TraceLike:
        values = [self.trace(self.t_power(i)) for i in range(self.n)]
        if all(v.is_zero() for v in values):
            raise ZeroTrace("the trace map is zero (inseparable extension)")
        t = tracelike_from_values(self, values)
        expected = self.from_g(self.gprime)
        if t.num != expected:
            raise FrobtraceError(f"internal check failed: trace key {t.num} differs from g' = {expected}")
        return t

    def trace_key(self) -> TraceLike:
        return self._trace_key

    def ramification_divisor(self) -> QDivisor:
        self._need_total()
        if not self.separable:
            raise ZeroTrace("inseparable extension: the ramification divisor is not defined")
        return divisor_of(self.from_g(self.gprime), self.total_table)

    def tameness(self, primes: Sequence[Poly] | None = None) -> list[tuple[Poly, Poly, int, str]]:
        """(base prime, total prime, ramification index, tame|wild|unramified)."""
        self._need_total()
        if primes is None:
            primes = list(self.base_table) or self._branch_primes()
        p = self.base.p
        out = []
        for P in primes:
            D = divisor_of(self.image(P.monic()), self.total_table)
            for C, k in D.coeffs.items():
                idx = int(k)
                kind = "unramified" if idx == 1 else ("wild" if idx % p == 0 else "tame")
                out.append((P.monic(), C, idx, kind))
        return out

    def _branch_primes(self) -> list[Poly]:
        """Base primes under the ramification divisor, read off from norms."""
        if not self.separable:
            return []
        out: list[Poly] = []
        for C in self.ramification_divisor().support:
            for P in divisor_of(self.norm(C), self.base_table).support:
                if P not in out:
                    out.append(P)
        return out

    def trace_image_ideal(self) -> Ideal:
        return Ideal(self.base, [self.trace(self.t_power(i)) for i in range(self.n)])

    def is_trace_surjective(self) -> bool:
        return self.trace_image_ideal().is_unit()

    def pullback(self, D: QDivisor) -> QDivisor:
        self._need_total()
        return pullback(self, D)

    def module_basis(self) -> list[Poly]:
        return [self.t_power(i) for i in range(self.n)]


@dataclass
class TraceLike:
    """The map Psi(s·) with s = num/den, den an element of the base ring."""

    ext: MonogenicExtension
    num: Poly
    den: Poly | None = None

    def __post_init__(self):
        if self.num.is_zero():
            raise ZeroTrace("the zero map cannot serve as a trace-like map")
        if self.den is not None and self.den.ring != self.ext.base:
            # move a total-ring denominator d into the base: 1/d = (N(d)/d) / N(d)
            d = self.den
            nd = self.ext.norm(d)
            cof = exact_div(self.ext.image(nd), d)
            self.num = self.num * cof
            self.den = nd
        if self.den is not None and self.den.is_constant():
            self.num = self.num.scale(self.ext.base.field.inv(self.den.constant_coeff()))
            self.den = None

    def __call__(self, f: Poly) -> Poly:
        v = self.ext.psi(self.num * f)
        if self.den is None:
            return v
        return exact_div(v, self.den)

    def divisor(self) -> QDivisor:
        """R_T = div(s)."""
        self.ext._need_total()
        D = divisor_of(self.num, self.ext.total_table)
        if self.den is not None:
            D = D - divisor_of(self.ext.image(self.den), self.ext.total_table)
        return D

    def __str__(self) -> str:
        return str(self.num) if self.den is None else f"({self.num})/({self.den})"


def tracelike_from_values(ext: MonogenicExtension, values: Sequence[Poly]) -> TraceLike:
    """The key s with Psi(s·T^i) = values[i]; the Hankel system is unitriangular."""
    n = ext.n
    if len(values) != n:
        raise FrobtraceError(f"need {n} values, one per power basis element")
    hankel = {k: ext.psi(ext.t_power(k)) for k in range(2 * n - 1)}
    s: list[Poly | None] = [None] * n
    for i in range(n):
        j0 = n - 1 - i
        acc = values[i]
        for j in range(j0 + 1, n):
            acc = acc - hankel[i + j] * s[j]
        s[j0] = acc
    return TraceLike(ext, ext.from_coords(s))


def ext_monogenic(
    base: PolyRing,
    g: str | Poly,
    total: PolyRing | None = None,
    images: dict[str, str | Poly] | None = None,
    tname: str = "T",
) -> MonogenicExtension:
    """Build R[T]/(g); ``images`` maps T and every base variable to total-ring elements."""
    if tname in base.vars:
        raise FrobtraceError(f"generator name {tname!r} clashes with a base variable")
    gring = PolyRing(base.field, (tname,) + base.vars, "lex")
    if isinstance(g, str):
        g = gring.parse(g)
    else:
        g = g.to_ring(gring)
    if total is None:
        return MonogenicExtension(base, g)
    images = dict(images or {})

    def img(name: str) -> Poly:
        if name not in images:
            raise FrobtraceError(f"missing image for {name}")
        v = images[name]
        return total.parse(v) if isinstance(v, str) else v.to_ring(total)

    return MonogenicExtension(base, g, total, img(tname), [img(v) for v in base.vars])


# -- presented extensions ------------------------------------------------------------


class PresentedExtension:
    kind = "presented"

    def __init__(
        self,
        ambient: PolyRing,
        relations: Ideal,
        basis: Sequence[Poly],
        basevars: Sequence[str],
        degree_bound: int = 6,
    ):
        for v in basevars:
            if v not in ambient.index:
                raise FrobtraceError(f"base variable {v!r} is not an ambient variable")
        extra = tuple(v for v in ambient.vars if v not in basevars)
        if not extra:
            raise FrobtraceError("a presented extension needs at least one non-base variable")
        self.ambient = ambient
        self.extra = extra
        self.k = len(extra)
        self.ring = PolyRing(ambient.field, extra + tuple(basevars), f"elim:{self.k}")
        self.relations = Ideal(self.ring, [g.to_ring(self.ring) for g in relations.gens])
        self.base = PolyRing(ambient.field, tuple(basevars), "grevlex")
        self.base_relations = Ideal(self.base, eliminate(list(self.relations.gens), self.ring, self.k, self.base))
        self.basis = [b.to_ring(self.ring) for b in basis]
        self.n = len(self.basis)
        self.degree_bound = degree_bound
        self.base_table = PrimeTable(self.base)
        if self.relations.is_unit():
            raise FrobtraceError("the relations generate the unit ideal")
        self._check_basis()

    def element_ring(self) -> PolyRing:
        return self.ring

    def _lift(self, f: Poly) -> Poly:
        if f.ring == self.ring:
            return f
        return f.to_ring(self.ring)

    def image(self, f: Poly) -> Poly:
        return f.to_ring(self.ring)

    @cached_property
    def module_generators(self) -> list[Poly]:
        """Monomials in the non-base variables that are standard for the relations."""
        lms = [g.lm for g in self.relations.gb]
        pure = [m for m in lms if not any(m[self.k:])]
        bounds = []
        for i in range(self.k):
            powers = [m[i] for m in pure if all(x == 0 for j, x in enumerate(m[:self.k]) if j != i)]
            if not powers:
                raise Inconclusive(f"S is not visibly module-finite over the base in {self.extra[i]}")
            bounds.append(min(powers))
        gens = []
        zero_tail = (0,) * (self.ring.nvars - self.k)
        for exps in itertools.product(*(range(b) for b in bounds)):
            m = tuple(exps) + zero_tail
            if not any(all(x <= y for x, y in zip(lm, m)) for lm in pure):
                gens.append(self.ring.monomial(m))
        return gens

    @cached_property
    def _base_monomials(self) -> list[list[Poly]]:
        """Standard monomials of the base relations, grouped by degree."""
        lms = [g.lm for g in self.base_relations.gb]
        nb = self.base.nvars
        out = []
        for d in range(self.degree_bound + 1):
            level = []
            for c in itertools.combinations_with_replacement(range(nb), d):
                e = [0] * nb
                for i in c:
                    e[i] += 1
                if not any(all(x <= y for x, y in zip(lm, e)) for lm in lms):
                    level.append(self.base.monomial(e))
            out.append(level)
        return out

    def _monos_upto(self, d: int) -> list[Poly]:
        return [m.to_ring(self.ring) for level in self._base_monomials[: d + 1] for m in level]

    def _linear_system(self, columns: Sequence[Poly]):
        reduced = [self.relations.reduce(c) for c in columns]
        support = sorted({m for r in reduced for m in r.terms})
        rows = [[r.terms.get(m, 0) for r in reduced] for m in support]
        return rows

    def coordinates(self, a: Poly) -> tuple[Poly, list[Poly]]:
        """(d, [r_k]) with d·a = sum r_k·basis_k in S and d a nonzero base element."""
        a = self._lift(a)
        p = self.ring.p
        for d in range(self.degree_bound + 1):
            monos = self._monos_upto(d)
            cols = [mu * a for mu in monos]
            for b in self.basis:
                cols += [-(mu * b) for mu in monos]
            rows = self._linear_system(cols)
            nm = len(monos)
            for v in fp_nullspace(rows, p, len(cols)):
                if any(v[:nm]):
                    den = _combo(monos, v[:nm], self.ring)
                    nums = [_combo(monos, v[nm * (k + 1): nm * (k + 2)], self.ring) for k in range(self.n)]
                    return den, nums
        raise FrobtraceError(f"no coordinates for {a} on the declared basis within degree {self.degree_bound}")

    def _check_basis(self) -> None:
        p = self.ring.p
        d = min(2, self.degree_bound)
        monos = self._monos_upto(d)
        cols = [mu * b for b in self.basis for mu in monos]
        rows = self._linear_system(cols)
        if fp_nullspace(rows, p, len(cols)):
            raise FrobtraceError("the declared basis is not linearly independent over the base")

    def _base_quotient(self, num: Poly, den: Poly) -> Poly:
        """t in R with den·t = num in S, found by a degree-bounded search."""
        p = self.ring.p
        for d in range(self.degree_bound + 1):
            monos = self._monos_upto(d)
            cols = [den * mu for mu in monos]
            reduced = [self.relations.reduce(c) for c in cols]
            target = self.relations.reduce(num)
            support = sorted({m for r in reduced + [target] for m in r.terms})
            rows = [[r.terms.get(m, 0) for r in reduced] for m in support]
            rhs = [target.terms.get(m, 0) for m in support]
            sol = fp_solve(rows, rhs, p, len(cols))
            if sol is not None:
                t = _combo(monos, sol, self.ring)
                return self.relations.reduce(t).to_ring(self.base)
        raise FrobtraceError(f"({num})/({den}) is not in the base ring within degree {self.degree_bound}")

    def trace(self, a: Poly) -> Poly:
        a = self._lift(a)
        num, den = self.ring.zero(), self.ring.one()
        for j, b in enumerate(self.basis):
            d, r = self.coordinates(a * b)
            num, den = num * d + r[j] * den, den * d
        return self._base_quotient(num, den)

    def trace_matrix(self) -> list[list[Poly]]:
        return [[self.trace(bi * bj) for bj in self.basis] for bi in self.basis]

    def trace_image_ideal(self) -> Ideal:
        gens = [self.trace(m) for m in self.module_generators]
        return Ideal(self.base, gens + list(self.base_relations.gens))

    def is_trace_surjective(self) -> bool:
        return self.trace_image_ideal().is_unit()

    def ramification_divisor(self) -> QDivisor:
        raise PreconditionError("ramification divisors are computed for monogenic extensions only")

    def module_basis(self) -> list[Poly]:
        return list(self.module_generators)


def _combo(monos: Sequence[Poly], coeffs: Sequence[int], ring: PolyRing) -> Poly:
    out = ring.zero()
    for m, c in zip(monos, coeffs):
        if c:
            out = out + m.scale(c)
    return out


def ext_presented(
    ambient: PolyRing,
    relations: Ideal | Sequence[str | Poly],
    basis: Sequence[str | Poly],
    basevars: Sequence[str],
    degree_bound: int = 6,
) -> PresentedExtension:
    if not isinstance(relations, Ideal):
        relations = Ideal(ambient, [ambient.parse(r) if isinstance(r, str) else r for r in relations])
    basis = [ambient.parse(b) if isinstance(b, str) else b for b in basis]
    return PresentedExtension(ambient, relations, basis, basevars, degree_bound)


Extension = MonogenicExtension | PresentedExtension


# -- surjectivity certificate --------------------------------------------------------


@dataclass
class Certificate:
    certified: bool
    reasons: list[str] = field(default_factory=list)
    direct: bool | None = None

    def __str__(self) -> str:
        head = "certified" if self.certified else "no-certificate"
        return head + "".join(f"\n  {r}" for r in self.reasons)


def surjectivity_certificate(ext: Extension, delta_x: QDivisor | None = None) -> Certificate:
    """Sufficient test: pi^*Delta_X - Ram effective and (X, Delta_X) strongly F-regular."""
    from .testideal import Hypersurface, is_strongly_F_regular

    delta_x = delta_x if delta_x is not None else QDivisor.zero(ext.base)
    reasons = []
    cond_i: bool | None
    if isinstance(ext, MonogenicExtension) and ext.identified and ext.separable:
        diff = ext.pullback(delta_x) - ext.ramification_divisor()
        cond_i = diff.is_effective()
        reasons.append(f"(i) pullback(Delta_X) - Ram = {diff}: {'effective' if cond_i else 'not effective'}")
    else:
        cond_i = None
        reasons.append("(i) not evaluated: no ramification divisor for this extension shape")
    if ext.base_relations.is_zero():
        base = ext.base
    else:
        gens = ext.base_relations.gb
        if len(gens) != 1:
            raise PreconditionError("the base must be a polynomial ring or a hypersurface")
        base = Hypersurface(ext.base, gens[0])
    cond_ii = is_strongly_F_regular(base, delta_x)
    reasons.append(f"(ii) strongly F-regular: {str(cond_ii).lower()}")
    cert = Certificate(bool(cond_i) and cond_ii, reasons)
    direct = ext.is_trace_surjective()
    cert.direct = direct
    if cert.certified and not direct:
        raise FrobtraceError("internal check failed: certified extension with non-surjective trace")
    return cert
