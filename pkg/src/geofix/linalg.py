"""Exact linear algebra over the rationals (Gaussian elimination on Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def _as_rows(rows: Sequence[Sequence], ncols: int) -> Matrix:
    out = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        out.append([Fraction(x) for x in r])
    return out


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _as_rows(rows, ncols)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """A basis of {v : rows·v = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    ra, rb = rank(a, ncols), rank(b, ncols)
    return ra == rb and rank(list(a) + list(b), ncols) == ra
