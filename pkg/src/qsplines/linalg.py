"""Exact rank and null space computations.

Ranks use fraction-free (Bareiss) elimination.  Rational matrices are first
scaled row by row to integers; matrices over Q[z] use :class:`UPoly`
entries with exact polynomial division.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, List, Sequence

from .univariate import UPoly


def bareiss_rank(rows: Sequence[Sequence], div: Callable, is_zero: Callable = lambda a: not a) -> int:
    """Rank of a matrix over an integral domain.

    ``div(a, b)`` must perform exact division.  Columns without a pivot are
    skipped; the previous pivot stays the Bareiss divisor.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = None
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if not is_zero(m[r][col])), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r = m[r]
            row_p = m[rank]
            for c in range(col + 1, ncols):
                v = row_r[c] * p - a * row_p[c]
                row_r[c] = v if prev is None else div(v, prev)
            row_r[col] = row_r[col] * 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _int_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact Bareiss division")
    return q


def rank_rational(rows: Sequence[Sequence]) -> int:
    """Exact rank of a matrix with int/Fraction entries."""
    int_rows: List[List[int]] = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        int_rows.append([int(x * den) for x in fr])
    return bareiss_rank(int_rows, _int_div)


def rank_upoly(rows: Sequence[Sequence[UPoly]]) -> int:
    """Rank over Q(z) of a matrix with entries in Q[z]."""
    return bareiss_rank(rows, lambda a, b: a.exact_div(b))


def nullspace(rows: Sequence[Sequence], ncols: int = None) -> List[List[Fraction]]:
    """Basis of the right null space of a rational matrix (RREF based)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
