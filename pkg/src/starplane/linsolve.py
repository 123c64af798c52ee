"""Deterministic sparse Gaussian elimination over exact rationals.

Rows are dicts {column index: Fraction} plus a right-hand side.  Pivoting is
fully deterministic (rows processed in input order, pivot = least column of
the reduced row), so repeated runs produce bit-identical solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class SolveResult:
    consistent: bool
    solution: list | None
    rank: int
    kernel_dim: int
    bad_row: int | None = None  # index of the first inconsistent input row


def solve(rows, ncols: int) -> SolveResult:
    """Solve the sparse system; free variables are set to zero.

    rows: iterable of (coeffs: dict[int, Fraction], rhs: Fraction).
    """
    pivots = {}  # col -> (rowdict normalized to pivot coeff 1, rhs)
    bad = None
    for idx, (coeffs, rhs) in enumerate(rows):
        row = {c: v for c, v in coeffs.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / row[col]
                if inv != 1:
                    row = {c: v * inv for c, v in row.items()}
                    rhs = rhs * inv
                pivots[col] = (row, rhs)
                break
            factor = row.pop(col)
            prow, prhs = piv
            for c, v in prow.items():
                if c == col:
                    continue
                acc = row.get(c, 0) - factor * v
                if acc:
                    row[c] = acc
                elif c in row:
                    del row[c]
            rhs = rhs - factor * prhs
        else:
            if rhs:
                if bad is None:
                    bad = idx
    rank = len(pivots)
    if bad is not None:
        return SolveResult(False, None, rank, ncols - rank, bad)
    # back substitution, descending pivot columns; free variables are 0
    sol = [Fraction(0)] * ncols
    for col in sorted(pivots, reverse=True):
        prow, prhs = pivots[col]
        acc = prhs
        for c, v in prow.items():
            if c != col:
                acc -= v * sol[c]
        sol[col] = acc
    return SolveResult(True, sol, rank, ncols - rank)


def invert_dense(matrix):
    """Exact inverse of a small dense rational matrix (list of lists)."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
