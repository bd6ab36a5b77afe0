"""Integral unimodular lattices modelling H^2(X; Z) of a closed four-manifold.

Cohomology classes and real homology classes share one coordinate system;
Poincaré duality is the identity on coordinates, so every pairing
(cup product, Kronecker evaluation, intersection form) routes through the
Gram matrix.  Classes are plain tuples: integers for ``Class`` values,
``Fraction`` (or int) entries for ``HClass`` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import PreconditionError

Vector = tuple[int, ...]
RVector = tuple[Fraction, ...]


def as_class(v: Iterable[int]) -> Vector:
    out = tuple(v)
    for x in out:
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Fraction) and x.denominator == 1:
                continue
            raise TypeError(f"integral class expected, got entry {x!r}")
    return tuple(int(x) for x in out)


def as_hclass(v: Iterable) -> RVector:
    return tuple(Fraction(x) for x in v)


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def _congruence_pivots(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal entries of an exact congruence diagonalization.

    Pivots on a nonzero diagonal entry when one exists; otherwise uses an
    off-diagonal entry a_ij, replacing e_i by e_i + e_j (which has square
    2 a_ij since both diagonal entries vanish).  The basis changes have
    determinant 1, so the product of the pivots is det(gram).
    """
    a = [[Fraction(x) for x in row] for row in gram]
    pivots: list[Fraction] = []
    while a:
        n = len(a)
        i = next((k for k in range(n) if a[k][k] != 0), None)
        if i is None:
            hit = next(((r, s) for r in range(n) for s in range(n) if a[r][s] != 0), None)
            if hit is None:
                raise ValueError("degenerate form")
            r, s = hit
            for k in range(n):
                a[r][k] += a[s][k]
            for k in range(n):
                a[k][r] += a[k][s]
            i = r
        p = a[i][i]
        pivots.append(p)
        col = [a[k][i] for k in range(n)]
        keep = [k for k in range(n) if k != i]
        hot = [k for k in keep if col[k]]
        # rows with a zero pivot-column entry are unchanged
        for r in hot:
            f = col[r] / p
            row = a[r]
            for s in hot:
                row[s] -= f * col[s]
        a = [[a[r][s] for s in keep] for r in keep]
    return pivots


@dataclass(frozen=True)
class Lattice:
    """A symmetric unimodular integral bilinear form in a fixed basis."""

    gram: tuple[tuple[int, ...], ...]
    _rows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gram = tuple(as_class(r) for r in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0:
            raise ValueError("lattice rank must be positive")
        if any(len(r) != n for r in gram):
            raise ValueError("gram matrix is not square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"gram matrix is not symmetric at ({i}, {j})")
        try:
            det = 1
            for p in _congruence_pivots(gram):
                det *= p
        except ValueError:
            det = 0
        if abs(det) != 1:
            raise ValueError(f"gram matrix is not unimodular (det = {det})")
        rows = tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in gram)
        object.__setattr__(self, "_rows", rows)

    @classmethod
    def diagonal(cls, entries: Iterable[int]) -> "Lattice":
        e = list(entries)
        return cls(tuple(tuple(e[i] if i == j else 0 for j in range(len(e)))
                         for i in range(len(e))))

    @classmethod
    def hyperbolic(cls) -> "Lattice":
        return cls(((0, 1), (1, 0)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _check(self, *vs: Sequence) -> None:
        for v in vs:
            if len(v) != self.rank:
                raise ValueError(f"dimension mismatch: vector of length {len(v)} "
                                 f"in a rank {self.rank} lattice")

    def covector(self, a: Sequence) -> tuple:
        """gram · a, the coefficients of the linear form <a, ·>."""
        self._check(a)
        return tuple(sum(x * a[j] for j, x in row) for row in self._rows)

    def _bilinear(self, a: Sequence, b: Sequence):
        self._check(a, b)
        total = 0
        for i, row in enumerate(self._rows):
            ai = a[i]
            if ai:
                total += ai * sum(x * b[j] for j, x in row)
        return total

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Cup product pairing a·b."""
        return int(self._bilinear(a, b))

    def eval(self, k: Sequence[int], h: Sequence) -> Fraction:
        """Kronecker pairing <K, h> of a cohomology class with a homology class."""
        hn, den = _integer_scaled(h)
        return Fraction(self._bilinear(k, hn), den)

    def qform(self, h: Sequence) -> Fraction:
        hn, den = _integer_scaled(h)
        return Fraction(self._bilinear(hn, hn), den * den)

    def is_characteristic(self, k: Sequence[int]) -> bool:
        self._check(k)
        # linear mod 2, so basis vectors suffice
        cov = self.covector(k)
        return all((cov[i] - self.gram[i][i]) % 2 == 0 for i in range(self.rank))

    @cached_property
    def _signature(self) -> tuple[int, int]:
        piv = _congruence_pivots(self.gram)
        return sum(1 for p in piv if p > 0), sum(1 for p in piv if p < 0)

    def signature(self) -> tuple[int, int]:
        """(b⁺, b⁻) from exact rational congruence diagonalization."""
        return self._signature

    @property
    def sigma(self) -> int:
        bp, bm = self._signature
        return bp - bm

    def is_odd(self) -> bool:
        # x·x mod 2 is additive, so the form is odd iff some diagonal entry is
        return any(self.gram[i][i] % 2 for i in range(self.rank))

    def is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0 for i in range(self.rank)
                   for j in range(self.rank) if i != j)

    def eps(self, w: Sequence[int], k: Sequence[int]) -> int:
        """Orientation parity ½(w² + w·K) mod 2; K must be characteristic."""
        if not self.is_characteristic(k):
            raise PreconditionError("K characteristic", "½(w²+w·K) is not an integer")
        num = self.pair(w, w) + self.pair(w, k)
        return (num // 2) % 2

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.rank, other.rank
        rows = [tuple(r) + (0,) * m for r in self.gram]
        rows += [(0,) * n + tuple(r) for r in other.gram]
        return Lattice(tuple(rows))

    def zero(self) -> Vector:
        return (0,) * self.rank

    def basis_vector(self, i: int) -> Vector:
        return tuple(int(j == i) for j in range(self.rank))


def _integer_scaled(v: Sequence) -> tuple[list[int], int]:
    """(numerators, d) with v = numerators / d, so pairings run in integers."""
    den = 1
    for x in v:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = math.lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in v], 1
    return [x.numerator * (den // x.denominator) if isinstance(x, Fraction) else x * den
            for x in v], den


def find_orthogonal_positive(lattice: Lattice, k: Sequence[int]) -> Vector:
    """A class Λ with Λ·K = 0 and Λ² > 0, for a diagonal ±1 form.

    With a₁, a₂ the coordinates of K on the first two positive basis
    vectors e₁, e₂, returns Λ = a₂e₁ − a₁e₂.  Characteristic K has odd
    a₁, a₂, so Λ² = a₁² + a₂² > 0.
    """
    if not lattice.is_diagonal() or any(abs(lattice.gram[i][i]) != 1
                                        for i in range(lattice.rank)):
        raise PreconditionError("intersection form diagonal with entries ±1")
    if not lattice.is_characteristic(k):
        raise PreconditionError("K characteristic")
    pos = [i for i in range(lattice.rank) if lattice.gram[i][i] == 1]
    if len(pos) < 2:
        raise PreconditionError("at least two positive basis vectors")
    i1, i2 = pos[:2]
    lam = [0] * lattice.rank
    lam[i1] = k[i2]
    lam[i2] = -k[i1]
    return tuple(lam)
