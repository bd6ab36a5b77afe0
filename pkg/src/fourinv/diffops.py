"""Difference operators on integer-indexed rational sequences.

``nabla(q, p, f)`` is f(x) + (−1)^q f(x+p).  Sequences carry an inclusive
window of valid arguments and every operator shrinks it by the headroom it
consumes; reading outside the window raises :class:`WindowError` instead
of extrapolating.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence


class WindowError(ValueError):
    """A sequence was read outside the window it is defined on."""


class KernelConditionError(ValueError):
    """The samples are not annihilated by the requested difference operator."""

    def __init__(self, message: str, witness: int | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class SeqFn:
    """f: Z → Q on the window lo ≤ x ≤ hi (None means unbounded).

    ``fn`` must be side-effect free.
    """

    fn: Callable[[int], Fraction]
    lo: int | None = None
    hi: int | None = None

    @classmethod
    def from_table(cls, table: dict[int, object]) -> "SeqFn":
        vals = {int(k): Fraction(v) for k, v in table.items()}
        return cls(vals.__getitem__, min(vals), max(vals))

    @classmethod
    def from_callable(cls, fn, lo=None, hi=None) -> "SeqFn":
        return cls(lambda x: Fraction(fn(x)), lo, hi)

    @classmethod
    def constant(cls, c) -> "SeqFn":
        c = Fraction(c)
        return cls(lambda x: c)

    def contains(self, x: int) -> bool:
        return (self.lo is None or x >= self.lo) and (self.hi is None or x <= self.hi)

    def __call__(self, x: int) -> Fraction:
        if not self.contains(x):
            raise WindowError(f"x = {x} outside window [{self.lo}, {self.hi}]")
        v = self.fn(x)
        return v if isinstance(v, Fraction) else Fraction(v)

    def shifted_window(self, offsets: Sequence[int]) -> tuple[int | None, int | None]:
        """Window of x such that x + o stays inside for every offset o."""
        lo = None if self.lo is None else self.lo - min(offsets)
        hi = None if self.hi is None else self.hi - max(offsets)
        return lo, hi


def z2_scale(a: int, p: int) -> int:
    """Product of a parity a ∈ Z/2 with an integer p: 0 or p."""
    return p if a % 2 else 0


def nabla(q: int, p: int, f: SeqFn) -> SeqFn:
    """x ↦ f(x) + (−1)^q f(x + p)."""
    sign = -1 if q % 2 else 1
    lo, hi = f.shifted_window([0, p])
    return SeqFn(lambda x: f(x) + sign * f(x + p), lo, hi)


def nabla_chain(ps: Sequence[int], qs: Sequence[int], f: SeqFn) -> SeqFn:
    """∇^{q₁}_{p₁} ∘ … ∘ ∇^{qₙ}_{pₙ} f (the last operator acts first)."""
    if len(ps) != len(qs):
        raise ValueError("p and q vectors differ in length")
    g = f
    for p, q in reversed(list(zip(ps, qs))):
        g = nabla(q, p, g)
    return g


def permutation_sum(f: SeqFn, x: int, ps: Sequence[int], qs: Sequence[int]) -> Fraction:
    """Σ over φ ∈ (Z/2)ⁿ of (−1)^{Σ q_u φ_u} f(x + Σ φ_u p_u)."""
    if len(ps) != len(qs):
        raise ValueError("p and q vectors differ in length")
    total = Fraction(0)
    for phi in itertools.product((0, 1), repeat=len(ps)):
        sign = (-1) ** sum(z2_scale(a, q) for a, q in zip(phi, qs))
        total += sign * f(x + sum(z2_scale(a, p) for a, p in zip(phi, ps)))
    return total


def iterated_nabla1(lam: int, n: int, f: SeqFn) -> SeqFn:
    """(∇¹_λ)ⁿ f by composing the operator n times."""
    g = f
    for _ in range(n):
        g = nabla(1, lam, g)
    return g


def binomial_nabla1(lam: int, n: int, f: SeqFn) -> SeqFn:
    """(∇¹_λ)ⁿ f as x ↦ Σ_i (−1)^i C(n,i) f(x + iλ)."""
    lo, hi = f.shifted_window([i * lam for i in range(n + 1)])
    weights = [(-1) ** i * math.comb(n, i) for i in range(n + 1)]
    return SeqFn(lambda x: sum((c * f(x + i * lam) for i, c in enumerate(weights)),
                               Fraction(0)), lo, hi)


def poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    """Σ coeffs[i] xⁱ (Horner)."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_from_kernel(lam: int, n: int, samples: Sequence) -> list[Fraction]:
    """Recover g(x) = f(λx) from samples f(0), f(λ), …, f(mλ).

    Requires (∇¹_λ)ⁿ f = 0 at every sample point where it is computable and
    m ≥ 2n.  Returns the coefficient list of g (lowest degree first, zero
    polynomial as []), which has degree ≤ n − 1.
    """
    if lam == 0:
        raise ValueError("λ must be nonzero")
    if n < 1:
        raise ValueError("n must be positive")
    vals = [Fraction(v) for v in samples]
    m = len(vals) - 1
    if m < 2 * n:
        raise ValueError(f"need samples at 0..{2 * n}·λ, got only up to {m}·λ")
    # forward differences of g on the unit grid are the (∇¹_λ) iterates up to sign
    diffs = [vals]
    for _ in range(n):
        prev = diffs[-1]
        diffs.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    for i, v in enumerate(diffs[n]):
        if v:
            raise KernelConditionError(
                f"(∇¹_λ)^{n} f is {(-1) ** n * v} at x = {i * lam}, not 0", witness=i * lam)
    # Newton: g(x) = Σ_r Δ^r g(0) · C(x, r)
    coeffs = [Fraction(0)] * n
    for r in range(n):
        falling = [Fraction(1)]
        for s in range(r):
            nxt = [Fraction(0)] * (len(falling) + 1)
            for d, c in enumerate(falling):
                nxt[d + 1] += c
                nxt[d] -= s * c
            falling = nxt
        scale = diffs[r][0] / math.factorial(r)
        for d, c in enumerate(falling):
            coeffs[d] += scale * c
    return _trim(coeffs)
