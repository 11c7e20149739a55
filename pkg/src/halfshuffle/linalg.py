"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns of a rational matrix."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if A[i][col] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def left_nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of ``{y : y^T A = 0}``, i.e. the linear relations among the rows."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    augmented = [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(rows)]
    R, pivots = row_reduce(augmented)
    r = sum(1 for p in pivots if p < n)
    # rows of R past the rank have a zero left block; their right block is a relation
    out = []
    for row in R[r:]:
        if all(x == 0 for x in row[:n]):
            out.append(row[n:])
    return out
