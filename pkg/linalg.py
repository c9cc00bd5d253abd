#!/usr/bin/env python3
"""
Exact linear algebra over the rationals.

Ranks use fraction-free sparse elimination on integer rows; kernels and
particular solutions use reduced row echelon form over `Fraction`.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from error_handler import SingularSystemError

SparseRow = Dict[int, int]


def _integer_row(row: Mapping[int, Fraction]) -> SparseRow:
    """Clear denominators and drop zeros"""
    den = 1
    for value in row.values():
        if isinstance(value, Fraction):
            den = lcm(den, value.denominator)
    result = {col: int(value * den) for col, value in row.items() if value}
    return _primitive(result)


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for value in row.values():
        g = gcd(g, value)
        if g == 1:
            return row
    if g > 1:
        return {col: value // g for col, value in row.items()}
    return row


def sparse_rank(rows: Sequence[Mapping[int, Fraction]]) -> int:
    """Rank of a list of sparse rows (column index -> value)"""
    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            col = min(row)
            pivot = pivots.get(col)
            if pivot is None:
                pivots[col] = row
                break
            a, b = row[col], pivot[col]
            g = gcd(a, b)
            a, b = a // g, b // g
            merged = {}
            for c in row.keys() | pivot.keys():
                value = b * row.get(c, 0) - a * pivot.get(c, 0)
                if value:
                    merged[c] = value
            row = _primitive(merged)
    return len(pivots)


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a dense matrix"""
    return sparse_rank([{j: v for j, v in enumerate(row) if v} for row in matrix])


def rref(matrix: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form and pivot columns"""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [v - factor * w for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> List[List[int]]:
    """Integer basis of {v : matrix v = 0}, one vector per free column"""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(integer_vector(vec))
    return basis


def integer_vector(vec: Sequence[Fraction]) -> List[int]:
    """Scale to coprime integers with the first nonzero entry positive"""
    den = 1
    for v in vec:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
        first = next(v for v in ints if v)
        if first < 0:
            ints = [-v for v in ints]
    return ints


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """One solution of matrix x = rhs; raises SingularSystemError when inconsistent"""
    augmented = [list(row) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        raise SingularSystemError("linear system is inconsistent")
    solution = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        solution[p] = row[ncols]
    return solution


def solve_unique(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """Solution of a square system with a unique answer"""
    ncols = len(matrix[0]) if matrix else 0
    if rank(matrix) != ncols:
        raise SingularSystemError(f"system of rank {rank(matrix)} has no unique solution in {ncols} unknowns")
    return solve(matrix, rhs)
