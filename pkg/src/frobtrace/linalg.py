"""Exact linear algebra: Gaussian elimination over F_p and Bareiss over polynomial rings."""

from __future__ import annotations

from typing import Sequence

from .polys import Poly, exact_div

Matrix = list[list[int]]


def fp_rref(rows: Sequence[Sequence[int]], p: int, ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def fp_nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {v : rows·v = 0} over F_p."""
    red, pivots = fp_rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def fp_solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int, ncols: int) -> list[int] | None:
    """One solution of rows·v = rhs over F_p, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = fp_rref(aug, p, ncols + 1)
    if ncols in pivots:
        return None
    v = [0] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant over a polynomial ring by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    m = [list(r) for r in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def cramer(matrix: Sequence[Sequence[Poly]], rhs: Sequence[Poly]) -> tuple[list[Poly], Poly]:
    """Solve matrix·c = rhs over the fraction field: returns numerators and common denominator."""
    det = bareiss_det(matrix)
    if det.is_zero():
        raise ZeroDivisionError("singular system")
    n = len(matrix)
    nums = []
    for i in range(n):
        mi = [[rhs[r] if c == i else matrix[r][c] for c in range(n)] for r in range(n)]
        nums.append(bareiss_det(mi))
    return nums, det
