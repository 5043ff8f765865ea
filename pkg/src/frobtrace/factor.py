"""Univariate arithmetic and factorization over F_p.

Internally polynomials are dense coefficient lists, lowest degree first, with
no trailing zeros.  Factorization runs squarefree decomposition, distinct
degree splitting and Cantor-Zassenhaus equal degree splitting.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import FrobtraceError
from .polys import Poly, PolyRing

Dense = list[int]


def trim(a: Dense) -> Dense:
    while a and a[-1] == 0:
        a.pop()
    return a


def d_add(a: Dense, b: Dense, p: int) -> Dense:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def d_sub(a: Dense, b: Dense, p: int) -> Dense:
    return d_add(a, [(-c) % p for c in b], p)


def d_mul(a: Dense, b: Dense, p: int) -> Dense:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def d_divmod(a: Dense, b: Dense, p: int) -> tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def d_mod(a: Dense, b: Dense, p: int) -> Dense:
    return d_divmod(a, b, p)[1]


def d_monic(a: Dense, p: int) -> Dense:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def d_gcd(a: Dense, b: Dense, p: int) -> Dense:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, d_mod(a, b, p)
    return d_monic(a, p)


def d_deriv(a: Dense, p: int) -> Dense:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def d_powmod(a: Dense, n: int, m: Dense, p: int) -> Dense:
    result: Dense = [1]
    base = d_mod(a, m, p)
    while n:
        if n & 1:
            result = d_mod(d_mul(result, base, p), m, p)
        n >>= 1
        if n:
            base = d_mod(d_mul(base, base, p), m, p)
    return result


def _pth_root(a: Dense, p: int) -> Dense:
    # only called when a' = 0, so every exponent is a multiple of p
    return a[::p]


def squarefree_decomposition(f: Dense, p: int) -> list[tuple[Dense, int]]:
    """Monic squarefree factors with multiplicities; f must be monic and nonconstant."""
    out: list[tuple[Dense, int]] = []

    def rec(f: Dense, mult: int) -> None:
        i = 1
        df = d_deriv(f, p)
        if not df:
            rec(_pth_root(f, p), mult * p)
            return
        c = d_gcd(f, df, p)
        w = d_divmod(f, c, p)[0]
        while len(w) > 1:
            y = d_gcd(w, c, p)
            z = d_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((d_monic(z, p), i * mult))
            i += 1
            w = y
            c = d_divmod(c, y, p)[0]
        if len(c) > 1:
            rec(_pth_root(c, p), mult * p)

    rec(d_monic(f, p), 1)
    return out


def distinct_degree(f: Dense, p: int) -> list[tuple[Dense, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    h: Dense = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = d_powmod(h, p, f, p)
        g = d_gcd(f, d_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = d_divmod(f, g, p)[0]
            h = d_mod(h, f, p)
    if len(f) > 1:
        out.append((d_monic(f, p), len(f) - 1))
    return out


def equal_degree(f: Dense, d: int, p: int, rng: random.Random) -> list[Dense]:
    """Cantor-Zassenhaus splitting of a monic product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            t = list(a)
            s = list(a)
            for _ in range(d - 1):
                t = d_mod(d_mul(t, t, p), f, p)
                s = d_add(s, t, p)
            b = s
        else:
            b = d_sub(d_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = d_gcd(f, b, p)
        if 1 < len(g) < len(f):
            h = d_divmod(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(d_monic(h, p), d, p, rng)


def factor_dense(f: Dense, p: int, seed: int = 0) -> list[tuple[Dense, int]]:
    """Monic irreducible factors with multiplicities, canonically sorted."""
    f = trim(list(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    rng = random.Random(seed)
    found: dict[tuple[int, ...], int] = {}
    for sq, mult in squarefree_decomposition(f, p):
        for g, d in distinct_degree(sq, p):
            for irr in equal_degree(g, d, p, rng):
                key = tuple(irr)
                found[key] = found.get(key, 0) + mult
    result = sorted(((list(k), m) for k, m in found.items()), key=lambda t: (len(t[0]), t[0][::-1]))
    check: Dense = [f[-1]]
    for g, m in result:
        for _ in range(m):
            check = d_mul(check, g, p)
    if check != f:
        raise FrobtraceError(f"internal factorization check failed for {f}")
    return result


# -- Poly bridge ---------------------------------------------------------------


def univariate_var(f: Poly) -> int | None:
    used = f.used_vars()
    if len(used) > 1:
        raise FrobtraceError(f"expected a univariate polynomial, got {f}")
    return next(iter(used)) if used else None


def to_dense(f: Poly, var: int) -> Dense:
    if f.is_zero():
        return []
    out = [0] * (f.degree_in(var) + 1)
    for m, c in f.terms.items():
        out[m[var]] = c
    return out


def from_dense(ring: PolyRing, var: int, a: Sequence[int]) -> Poly:
    n = ring.nvars
    terms = {}
    for i, c in enumerate(a):
        if c:
            e = [0] * n
            e[var] = i
            terms[tuple(e)] = c
    return Poly(ring, terms)


def univariate_factor(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor a nonzero univariate polynomial into monic irreducibles.

    The leading scalar is dropped; output order is by degree, then by
    coefficients from the top down, so it does not depend on ``seed``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    var = univariate_var(f)
    if var is None:
        return []
    p = f.ring.p
    return [(from_dense(f.ring, var, g), m) for g, m in factor_dense(to_dense(f, var), p, seed)]


def is_irreducible(f: Poly) -> bool:
    if f.is_constant():
        return False
    factors = univariate_factor(f)
    return len(factors) == 1 and factors[0][1] == 1


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of univariate polynomials in the same variable (or constants)."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    va, vb = univariate_var(a), univariate_var(b)
    if va is None or vb is None:
        return a.ring.one()
    if va != vb:
        return a.ring.one()
    return from_dense(a.ring, va, d_gcd(to_dense(a, va), to_dense(b, va), a.ring.p))
