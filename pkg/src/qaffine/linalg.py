"""Exact linear algebra over Q and over the Laurent ring (at gam = 1).

Ranks use fraction-free (Bareiss) elimination: rows are cleared of
denominators first, so every intermediate quantity is an integer and the
division by the previous pivot is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .scalar import ONE, ZERO, Scalar


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        d = lcm(*(v.denominator for v in fr)) if fr else 1
        out.append([int(v * d) for v in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            m[r] = [(p * m[r][c] - a * m[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix via fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        d = lcm(*(v.denominator for v in fr))
        scale /= d
        m.append([int(v * d) for v in fr])
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] * scale


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, from the reduced row echelon form."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


def cofactor_det(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """Symbolic determinant by Laplace expansion along the first row (memoized on column sets)."""
    n = len(matrix)
    memo: dict[tuple[int, tuple[int, ...]], Scalar] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Scalar:
        if row == n:
            return ONE
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = ZERO
        for i, c in enumerate(cols):
            entry = matrix[row][c]
            if entry:
                term = entry * minor(row + 1, cols[:i] + cols[i + 1:])
                total = total + (term if i % 2 == 0 else -term)
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def symbolic_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the Laurent ring by Bareiss elimination with exact Scalar division.

    Entries must not mix gam powers within a pivot (specialize to gam = 1 first).
    """
    m = [[Scalar.coerce(v) for v in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = ONE
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            m[r] = [(p * m[r][c] - a * m[rank][c]).exact_div(prev) for c in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank
