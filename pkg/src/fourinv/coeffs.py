"""Model of the universal coefficients b̃_{i,j,k} of the cobordism formula.

For i ≥ n the coefficients are known in closed form.  Below that they are
only known to be polynomials in x = K·Λ of degree ≤ n − 1 − i with half of
their coefficients forced to vanish by a parity rule; the remaining free
coefficients β are filled with seeded pseudo-random rationals, so any check
that depends on them fails for most seeds.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class CoeffTable:
    """b̃_{i,j,k}(χ_h, c₁², x, Λ², m) for fixed (χ_h, c₁², Λ², m).

    ``n`` = χ_h − c₁² − 3 is the index where the closed form starts.
    ``beta_scale`` multiplies every free coefficient; ``violations`` is a
    set of (i, j, k) whose low-index polynomial gets an extra x^{n−i} term
    of too-high degree (a deliberately broken table).
    """

    chi_h: int
    c1sq: int
    lam_sq: int
    m: int
    seed: int = 0
    beta_scale: Fraction = Fraction(1)
    violations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        object.__setattr__(self, "beta_scale", Fraction(self.beta_scale))
        object.__setattr__(self, "violations",
                           frozenset(tuple(v) for v in self.violations))

    @property
    def n(self) -> int:
        return self.chi_h - self.c1sq - 3

    def is_known(self, i: int) -> bool:
        return i >= self.n

    def beta(self, u: int, i: int, j: int, k: int) -> Fraction:
        """Free coefficient of x^u in b̃_{i,j,k}; zero when u ≡ n + i mod 2."""
        n = self.n
        if i >= n or not 0 <= u <= n - 1 - i or (u - n - i) % 2 == 0:
            return Fraction(0)
        return self.beta_scale * _seeded_beta(self.seed, self.chi_h, self.c1sq,
                                              self.lam_sq, self.m, u, i, j, k)

    def low_poly(self, i: int, j: int, k: int) -> list[Fraction]:
        """Coefficients (lowest first) of the polynomial b̃_{i,j,k}(x), i < n."""
        n = self.n
        coeffs = [self.beta(u, i, j, k) for u in range(max(n - i, 0))]
        if (i, j, k) in self.violations:
            coeffs.append(Fraction(1))
        return coeffs

    def closed_form(self, i: int, j: int, k: int) -> Fraction:
        if j > 0:
            return Fraction(0)
        a = i + j + 2 * k + 2 * self.m
        return Fraction(math.factorial(a - 2 * self.m),
                        math.factorial(k) * math.factorial(i)) * Fraction(2) ** (self.m - k - self.n)

    def evaluate(self, i: int, j: int, k: int, x: int) -> Fraction:
        if min(i, j, k) < 0:
            raise ValueError("indices must be non-negative")
        if self.is_known(i):
            return _closed_form_cached(self, i, j, k)
        nums, den = _low_poly_cached(self, i, j, k)
        total = 0
        for c in reversed(nums):
            total = total * x + c
        return Fraction(total, den)

    __call__ = evaluate


@lru_cache(maxsize=None)
def _seeded_beta(seed, chi_h, c1sq, lam_sq, m, u, i, j, k) -> Fraction:
    rng = random.Random(f"{seed}|{chi_h}|{c1sq}|{lam_sq}|{m}|{u}|{i}|{j}|{k}")
    num = 0
    while num == 0:
        num = rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 7))


@lru_cache(maxsize=4096)
def _low_poly_cached(table: CoeffTable, i: int, j: int, k: int) -> tuple[tuple[int, ...], int]:
    """Integer numerators over a common denominator, for Horner in ints."""
    coeffs = table.low_poly(i, j, k)
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return tuple(int(c * den) for c in coeffs), den


@lru_cache(maxsize=4096)
def _closed_form_cached(table: CoeffTable, i: int, j: int, k: int) -> Fraction:
    return table.closed_form(i, j, k)
