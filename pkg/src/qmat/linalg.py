"""Exact dense linear algebra over the coefficient field Q(q).

Matrices are lists of rows; entries are ``RationalFunction`` instances or
``None`` for structural zeros.  Everything here is fraction-free only in
spirit: the coefficient arithmetic itself is exact, so plain Gaussian
elimination is sound.
"""

from __future__ import annotations

from .rational import RF_ZERO, RationalFunction


def solve_linear_system(
    matrix: list[list[RationalFunction | None]],
    rhs: list[RationalFunction | None],
) -> list[RationalFunction] | None:
    """One exact solution of matrix * x = rhs, or None if inconsistent.

    Free variables, if any, are set to zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [
        [c if c is not None else RF_ZERO for c in row]
        + [rhs[r] if rhs[r] is not None else RF_ZERO]
        for r, row in enumerate(matrix)
    ]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if aug[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col].inv()
        aug[rank] = [c * inv for c in aug[rank]]
        prow = aug[rank]
        for r in range(rows):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], prow)]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, rows):
        if aug[r][cols]:
            return None
    solution = [RF_ZERO] * cols
    for r, col in pivots:
        solution[col] = aug[r][cols]
    return solution


def rank_over_field(matrix: list[list[RationalFunction | None]]) -> int:
    """Rank of a matrix with Q(q) entries."""
    rows = [
        [c if c is not None else RF_ZERO for c in row] for row in matrix
    ]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [c * inv for c in rows[rank]]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
    return rank
