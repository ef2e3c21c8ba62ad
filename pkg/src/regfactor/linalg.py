"""Exact linear algebra over the rationals.

Small dense routines backing rank, nullspace, and span membership checks.
Integer matrices go through fraction-free elimination; anything else falls
back to Gaussian elimination with Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with int or Fraction entries."""
    if not rows or not rows[0]:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        return _rank_bareiss([list(row) for row in rows])
    return _rank_gauss([[Fraction(x) for x in row] for row in rows])


def _rank_bareiss(m: list[list[int]]) -> int:
    """Fraction-free elimination; divisions are exact by construction."""
    n_rows, n_cols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                num = pivot * m[i][j] - m[i][c] * m[r][j]
                quot, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free step was not exact")
                m[i][j] = quot
            m[i][c] = 0
        prev = pivot
        r += 1
        if r == n_rows:
            break
    return r


def _rank_gauss(m: list[list[Fraction]]) -> int:
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m or not m[0]:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence], n_cols: int) -> list[list[Fraction]]:
    """Canonical basis of the right kernel, one vector per free column.

    ``n_cols`` is required so that an empty equation list still knows the
    ambient dimension.
    """
    if n_cols == 0:
        return []
    if not rows:
        reduced, pivots = [], []
    else:
        reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, pivot_col in enumerate(pivots):
            vec[pivot_col] = -reduced[row_idx][free]
        basis.append(vec)
    return basis


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Whether ``target`` is a rational linear combination of ``vectors``."""
    if all(not Fraction(x) for x in target):
        return True
    if not vectors:
        return False
    matrix = [list(v) for v in vectors]
    return rank(matrix) == rank(matrix + [list(target)])
