"""Difference relations for the low-index coefficients, read off X_q(n).

On the n-fold blow-up X_q(n), Witten's formula and the cobordism formula
are both polynomials in ⟨K±e₁*,h⟩, ⟨e₂*,h⟩, …, ⟨eₙ*,h⟩, ⟨Λ̃,h⟩ and Q(h),
and these are algebraically independent.  Comparing the coefficient of
one distinguished monomial on both sides gives

    0 = p! · 2^{p−1} · (∇¹₄)^{n−p} b̃_{p,j,k}(x).

:func:`blownup_identity_detail` expands both sides exactly, extracts that
coefficient in chart coordinates and also evaluates the right-hand
expression through the difference operators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import CoeffTable
from .diffops import SeqFn, iterated_nabla1
from .errors import PreconditionError
from .invariants import cobordism_poly, p_factor, witten_poly
from .lattice import Vector, add, neg, scale
from .manifold import FourManifold, example_classes, example_xqn
from .polyalg import FormChart


@dataclass(frozen=True)
class BlownupFixture:
    manifold: FourManifold
    lam: Vector          # Λ̃
    w: Vector            # w̃ = Λ̃ − K₀
    k0: Vector
    delta: int
    forms: tuple         # K+e₁*, K−e₁*, e₂*, …, eₙ*, Λ̃
    w_coords: tuple      # w_u with w̃ = w + Σ w_u e_u*
    lam_coords: tuple    # λ_u


def default_lam_sq(q: int, n: int, p: int, j: int, k: int, m: int) -> int:
    """Smallest non-negative Λ̃² allowed for the index choice (p, j, k, m)."""
    a = p + j + 2 * k + 2 * m
    y = (a - n - 3) % 4
    while y <= a - 4 * q - n - 3:
        y += 4
    return y


def build_fixture(q: int, n: int, p: int, j: int, k: int, m: int, table: CoeffTable,
                  x: int | None = None) -> BlownupFixture:
    if q < 2:
        raise PreconditionError("q ≥ 2")
    if n < 2:
        raise PreconditionError("n ≥ 2")
    if not 1 <= p <= n - 1:
        raise PreconditionError("1 ≤ p ≤ n−1", f"p={p}, n={n}")
    if min(j, k, m) < 0:
        raise PreconditionError("j, k, m ≥ 0")
    if (table.chi_h, table.c1sq, table.m) != (q, q - n - 3, m):
        raise PreconditionError("coefficient table taken at (χ_h, c₁², m) = (q, q−n−3, m)",
                                f"got {(table.chi_h, table.c1sq, table.m)}")
    y = table.lam_sq
    a = p + j + 2 * k + 2 * m
    if x is None:
        x = y % 2
    if not y > a - 4 * q - n - 3:
        raise PreconditionError("Λ̃² > A−4q−n−3", f"Λ̃²={y}, A={a}")
    if (y - a + n + 3) % 4:
        raise PreconditionError("Λ̃² ≡ A−(n+3) (mod 4)", f"Λ̃²={y}, A={a}")
    if (x - y) % 2:
        raise PreconditionError("x ≡ Λ̃² (mod 2)", f"x={x}, Λ̃²={y}")

    names = example_classes(q, n)
    shift = x + 2 * (n - p)
    y0 = (y + shift ** 2 + 4 * (n - p)) // 2
    lam_coords = tuple([-shift] + [0] * (p - 1) + [2] * (n - p))
    lam = add(scale(y0, names["f1"]), names["f2"])
    for u, lu in enumerate(lam_coords, start=1):
        lam = add(lam, scale(lu, names[f"e{u}"]))
    k0 = names["K0"]
    w = add(lam, neg(k0))
    # w̃ pairs with e_u* as −w_u since (e_u*)² = −1
    xm = example_xqn(q, n)
    L = xm.lattice
    w_coords = tuple(-L.pair(w, names[f"e{u}"]) for u in range(1, n + 1))
    kk = names["K"]
    forms = (add(kk, names["e1"]), add(kk, neg(names["e1"])),
             *(names[f"e{u}"] for u in range(2, n + 1)), lam)
    return BlownupFixture(xm, lam, w, k0, a, forms, w_coords, lam_coords)


@dataclass(frozen=True)
class BlownupReport:
    lhs: Fraction            # Witten side coefficient
    rhs: Fraction            # cobordism side coefficient
    rhs_expected: Fraction   # p!·2^{p−1}·(∇¹₄)^{n−p} b̃_p(x)
    lhs_p_factor: int

    @property
    def ok(self) -> bool:
        return self.lhs == 0 and self.rhs == 0

    @property
    def consistent(self) -> bool:
        return self.rhs == self.rhs_expected and (self.lhs == 0) == (self.lhs_p_factor == 0)


def blownup_identity_detail(q: int, n: int, p: int, j: int, k: int, m: int,
                            table: CoeffTable, x: int | None = None) -> BlownupReport:
    fx = build_fixture(q, n, p, j, k, m, table, x)
    if x is None:
        x = table.lam_sq % 2
    xm, L = fx.manifold, fx.manifold.lattice
    chart = FormChart(L, fx.forms)
    lhs_poly = witten_poly(xm, fx.w, fx.delta, m, chart.basis)
    rhs_poly = cobordism_poly(xm, fx.w, fx.delta, m, fx.lam, table, chart.basis)
    norm = (-1) ** L.eps(fx.w, fx.k0) * xm.sw[fx.k0]
    lhs = chart.extract(lhs_poly * Fraction(1, norm))
    rhs = chart.extract(rhs_poly * Fraction(1, norm))
    # t_+ · t_2 ⋯ t_p · ℓ^j · Q^k
    alpha = (1, 0) + (1,) * (p - 1) + (0,) * (n - p) + (j,)
    key = (alpha, k)
    b_p = SeqFn(lambda t: table.evaluate(p, j, k, t))
    expected = (math.factorial(p) * 2 ** (p - 1)
                * iterated_nabla1(4, n - p, b_p)(x))
    i_coords = (1,) * (p - 1) + (0,) * (n - p)
    return BlownupReport(lhs.get(key, Fraction(0)), rhs.get(key, Fraction(0)),
                         Fraction(expected), p_factor(fx.w_coords[1:], i_coords))


def verify_blownup_identity(q: int, n: int, p: int, j: int, k: int, m: int,
                            table: CoeffTable, x: int | None = None) -> bool:
    """Whether the distinguished coefficient vanishes on both sides."""
    return blownup_identity_detail(q, n, p, j, k, m, table, x).ok
