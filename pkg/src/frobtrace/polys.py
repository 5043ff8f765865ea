"""Prime fields F_p and sparse multivariate polynomials over them.

A :class:`Poly` is an immutable map from exponent tuples to nonzero residues
mod p.  Terms are ordered by the owning :class:`PolyRing`'s monomial order;
``lex`` and ``grevlex`` are user-facing, ``elim:k`` is the block order used
for elimination (first ``k`` variables form the larger block, grevlex inside
each block).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotDivisible, ParseError, RingMismatch, UnknownVariable

MAX_EXPONENT = 2**31 - 1
IDENTIFIER = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < 2**31:
            raise ValueError(f"characteristic must satisfy 2 <= p < 2^31, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)


def _grevlex(e: tuple[int, ...]) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def _order_key(order: str, n: int):
    if order == "lex":
        return lambda e: e
    if order == "grevlex":
        return _grevlex
    if order.startswith("elim:"):
        try:
            k = int(order[5:])
        except ValueError:
            k = -1
        if not 0 <= k <= n:
            raise ValueError(f"bad elimination order {order!r} for {n} variables")
        return lambda e: (_grevlex(e[:k]), _grevlex(e[k:]))
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class PolyRing:
    field: FieldCtx
    vars: tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        _order_key(self.order, len(self.vars))

    @classmethod
    def make(cls, p: int, vars: str | Iterable[str], order: str = "grevlex") -> PolyRing:
        if isinstance(vars, str):
            vars = [v.strip() for v in vars.split(",") if v.strip()]
        for v in vars:
            if not IDENTIFIER.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        return cls(FieldCtx(p), tuple(vars), order)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @cached_property
    def sort_key(self):
        return _order_key(self.order, len(self.vars))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vars)}

    @cached_property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.vars)

    def with_order(self, order: str) -> PolyRing:
        return PolyRing(self.field, self.vars, order)

    def with_vars(self, vars: Sequence[str], order: str | None = None) -> PolyRing:
        return PolyRing(self.field, tuple(vars), order or self.order)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c: int) -> Poly:
        return Poly(self, {self.zero_exp: c})

    def var(self, name: str) -> Poly:
        try:
            i = self.index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None
        e = [0] * len(self.vars)
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list[Poly]:
        return [self.var(v) for v in self.vars]

    def monomial(self, exp: Sequence[int], c: int = 1) -> Poly:
        return Poly(self, {tuple(exp): c})

    def parse(self, text: str, env: Mapping[str, Poly] | None = None) -> Poly:
        return parse_poly(self, text, env)

    def __str__(self) -> str:
        return f"F_{self.p}[{', '.join(self.vars)}]"


def _add_exp(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def divides_exp(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when the monomial with exponent ``a`` divides the one with ``b``."""
    return all(x <= y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to 1..p-1."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int] | None = None):
        p = ring.p
        clean = {}
        if terms:
            n = ring.nvars
            for m, c in terms.items():
                c %= p
                if c:
                    if len(m) != n:
                        raise ValueError(f"exponent {m} does not match {n} variables")
                    clean[tuple(m)] = c
        self.ring = ring
        self.terms = clean
        self._lm = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> Poly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._lm = None
        obj._hash = None
        return obj

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring.zero_exp, 0)

    @property
    def lm(self) -> tuple[int, ...]:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.sort_key)
        return self._lm

    @property
    def lc(self) -> int:
        return self.terms[self.lm]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var: str | int) -> int:
        i = self.ring.index[var] if isinstance(var, str) else var
        return max((m[i] for m in self.terms), default=-1)

    def used_vars(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, x in enumerate(m) if x)
        return used

    def is_univariate(self) -> bool:
        return len(self.used_vars()) <= 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coeff(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        a, b = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        p = self.ring.p
        return Poly._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> Poly:
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ring.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        return Poly._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, exp: tuple[int, ...], c: int) -> Poly:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {_add_exp(m, exp): v * c % p for m, v in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        if n == 0:
            return self.ring.one()
        if self.degree() * n > MAX_EXPONENT:
            raise OverflowError("exponent overflow in power")
        p = self.ring.p
        q = 1
        while n % p == 0:
            n //= p
            q *= p
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result.frobenius(q) if q > 1 else result

    def frobenius(self, q: int) -> Poly:
        """f^q computed termwise; valid because q is a power of p and c^q = c in F_p."""
        if q == 1:
            return self
        if self.degree() * q > MAX_EXPONENT:
            raise OverflowError("exponent overflow in Frobenius power")
        return Poly._raw(self.ring, {tuple(q * x for x in m): c for m, c in self.terms.items()})

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def derivative(self, var: str | int) -> Poly:
        i = self.ring.index[var] if isinstance(var, str) else var
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            if m[i] and (m[i] * c) % p:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = m[i] * c % p
        return Poly._raw(self.ring, out)

    def substitute(self, images: Sequence[Poly], target: PolyRing | None = None) -> Poly:
        """Evaluate at ``x_i -> images[i]`` (all images in ``target``)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        powers: list[dict[int, Poly]] = [{0: target.one(), 1: img} for img in images]

        def power(i: int, k: int) -> Poly:
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        out = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def to_ring(self, target: PolyRing) -> Poly:
        """Re-embed into ``target`` matching variables by name."""
        if target == self.ring:
            return self
        if target.p != self.ring.p:
            raise RingMismatch("characteristics differ")
        try:
            pos = [target.index[v] for v in self.ring.vars]
        except KeyError as exc:
            used = self.used_vars()
            missing = [self.ring.vars[i] for i in used if self.ring.vars[i] not in target.index]
            if missing:
                raise RingMismatch(f"variables {missing} absent from {target}") from exc
            pos = [target.index.get(v, -1) for v in self.ring.vars]
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, x in enumerate(m):
                if x:
                    e[pos[i]] = x
            out[tuple(e)] = c
        return Poly._raw(target, out)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self.sorted_terms())

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r} in {self.ring})"


def format_poly(f: Poly) -> str:
    """Canonical text: descending terms, coefficients in 1..p-1, explicit ``*`` and ``^``."""
    if not f.terms:
        return "0"
    names = f.ring.vars
    parts = []
    for m, c in f.sorted_terms():
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def exact_div(a: Poly, b: Poly) -> Poly:
    """Return q with a = q*b, raising :class:`NotDivisible` otherwise.

    With a single divisor the set {b} is a Groebner basis, so the division
    fails exactly when a leading term of the running remainder is not
    divisible by lm(b).
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    ring = a.ring
    p = ring.p
    key = ring.sort_key
    blm, binv = b.lm, ring.field.inv(b.lc)
    rem = dict(a.terms)
    quot: dict = {}
    bterms = list(b.terms.items())
    while rem:
        m = max(rem, key=key)
        if not divides_exp(blm, m):
            raise NotDivisible(f"{b} does not divide {a}")
        shift = tuple(x - y for x, y in zip(m, blm))
        c = rem[m] * binv % p
        quot[shift] = c
        for bm, bc in bterms:
            mm = tuple(x + y for x, y in zip(bm, shift))
            v = (rem.get(mm, 0) - c * bc) % p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Poly._raw(ring, quot)


def try_div(a: Poly, b: Poly) -> Poly | None:
    try:
        return exact_div(a, b)
    except NotDivisible:
        return None


def valuation(f: Poly, prime: Poly) -> tuple[int, Poly]:
    """Largest k with prime^k | f, together with f / prime^k."""
    if f.is_zero():
        raise ValueError("valuation of zero is infinite")
    if prime.is_constant():
        raise ValueError("cannot take the valuation at a unit")
    k = 0
    while True:
        q = try_div(f, prime)
        if q is None:
            return k, f
        f, k = q, k + 1


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str, env: Mapping[str, Poly] | None):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        self.env = env or {}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        return tok

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        f = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def expr(self) -> Poly:
        f = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Poly:
        f = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            f = f * self.unary()
        nxt = self.peek()
        if nxt[0] in ("ident", "int") or nxt[:2] == ("op", "("):
            raise ParseError("implicit multiplication is not allowed; use '*'", nxt[2])
        return f

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        f = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.expect("int")
            n = int(tok[1])
            if n > MAX_EXPONENT:
                raise ParseError("exponent too large", tok[2])
            f = f ** n
        return f

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "ident":
            if val in self.ring.index:
                return self.ring.var(val)
            if val in self.env:
                bound = self.env[val]
                return bound.to_ring(self.ring) if bound.ring != self.ring else bound
            raise UnknownVariable(f"unknown variable {val!r}", pos)
        if (kind, val) == ("op", "("):
            f = self.expr()
            self.expect("op", ")")
            return f
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_poly(ring: PolyRing, text: str, env: Mapping[str, Poly] | None = None) -> Poly:
    """Parse ASCII polynomial text (``+ - * ^``, parentheses, integer literals).

    ``env`` optionally supplies named polynomials usable as atoms.
    """
    return _Parser(ring, text, env).parse()
