"""Exact linear algebra over the rationals, sized for desk-scale matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix with Fraction entries, by Gaussian elimination."""
    mat: List[List[Fraction]] = [[Fraction(x) for x in row] for row in rows]
    if not mat or not mat[0]:
        return 0
    ncols = len(mat[0])
    rank = 0
    col = 0
    while rank < len(mat) and col < ncols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        prow = mat[rank]
        inv = Fraction(1) / prow[col]
        for r in range(rank + 1, len(mat)):
            factor = mat[r][col]
            if factor == 0:
                continue
            scale = factor * inv
            row = mat[r]
            for c in range(col, ncols):
                row[c] -= scale * prow[c]
        rank += 1
        col += 1
    return rank


def rational_nullity(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows or not rows[0]:
        return len(rows[0]) if rows else 0
    return len(rows[0]) - rational_rank(rows)
