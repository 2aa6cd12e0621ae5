"""Exact dense linear algebra over Q(i) (small matrices only)."""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .poly import coerce


def _copy(M):
    return [[coerce(x) for x in row] for row in M]


def row_echelon(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = _copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(row_echelon(M)[1])


def transpose(M):
    return [list(col) for col in zip(*M)]


def inverse(M: Sequence[Sequence]) -> list[list]:
    n = len(M)
    if any(len(row) != n for row in M):
        raise InputError("only square matrices are invertible")
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return [row[n:] for row in R]


def matvec(M, v):
    return [sum((a * b for a, b in zip(row, v)), coerce(0)) for row in M]
