"""Exact rational linear algebra on lists of numbers.

Thin adapter over sympy's ``DomainMatrix`` on QQ; everything crosses the
boundary as ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Row = Sequence[int | Fraction]


def _dm(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows: Sequence[Row], ncols: int) -> int:
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def pivot_columns(rows: Sequence[Row], ncols: int) -> tuple[int, ...]:
    if not rows:
        return ()
    _, pivots = _dm(rows, ncols).rref()
    return tuple(pivots)


def nullspace(rows: Sequence[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows · x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [tuple(_frac(x) for x in r) for r in ns.to_list()]


def solve_square(rows: Sequence[Row], rhs: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    n = len(rows)
    a = _dm(rows, n)
    b = _dm([[x] for x in rhs], 1)
    sol = a.lu_solve(b)
    return tuple(_frac(r[0]) for r in sol.to_list())


def solve_particular(rows: Sequence[Row], ncols: int,
                     rhs: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """One solution of a full-row-rank system, supported on pivot columns."""
    piv = pivot_columns(rows, ncols)
    if len(piv) != len(rows):
        raise ValueError("system is not of full row rank")
    sub = [[r[j] for j in piv] for r in rows]
    part = solve_square(sub, rhs)
    out = [Fraction(0)] * ncols
    for j, val in zip(piv, part):
        out[j] = val
    return tuple(out)


def solve_least(rows: Sequence[Row], ncols: int,
                rhs: Sequence[int | Fraction]) -> tuple[Fraction, ...] | None:
    """A solution of an overdetermined consistent system, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, piv = _dm(aug, ncols + 1).rref()
    if ncols in piv:
        return None
    red = m.to_list()
    out = [Fraction(0)] * ncols
    for i, j in enumerate(piv):
        out[j] = _frac(red[i][ncols])
    return tuple(out)
