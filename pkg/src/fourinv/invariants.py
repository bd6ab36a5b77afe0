"""Donaldson invariants from Seiberg-Witten data, two ways.

* Witten's formula: a closed expression in the basic classes.
* The SO(3)-monopole cobordism formula: the same invariant as a sum over
  basic classes weighted by universal coefficients b̃_{i,j,k}, only some
  of which are known (see :mod:`fourinv.coeffs`).

Every evaluator is built on a polynomial-valued core that takes a list of
homology vectors ``basis`` and returns the invariant as a polynomial in the
coefficients of h in that basis.  Scalar values use the one-element basis
[h] evaluated at 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coeffs import CoeffTable
from .errors import PreconditionError
from .lattice import Lattice, Vector, as_class, as_hclass
from .manifold import FourManifold, blow_up, is_scst, nu
from .polyalg import Poly, linear_form, polarize_slot, quad_form


@dataclass(frozen=True)
class InvariantQuery:
    """Evaluate D^w_X on h^{δ−2m} x^m."""

    w: Vector
    delta: int
    m: int
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", as_class(self.w))
        object.__setattr__(self, "h", as_hclass(self.h))
        if self.delta < 0 or self.m < 0:
            raise PreconditionError("δ, m ≥ 0", f"δ={self.delta}, m={self.m}")
        if self.delta - 2 * self.m < 0:
            raise PreconditionError("δ−2m ≥ 0", f"δ={self.delta}, m={self.m}")

    @property
    def degree(self) -> int:
        return self.delta - 2 * self.m


def degree_admissible(chi_h: int, w_sq: int, delta: int) -> bool:
    """δ ≡ −w² − 3χ_h (mod 4); the invariant vanishes in other degrees."""
    return (delta + w_sq + 3 * chi_h) % 4 == 0


def _require_simple_type(x: FourManifold) -> None:
    if not x.has_simple_type():
        raise PreconditionError("Seiberg-Witten simple type")


def _require_degree(delta: int, m: int) -> None:
    if delta - 2 * m < 0:
        raise PreconditionError("δ−2m ≥ 0", f"δ={delta}, m={m}")


def _check_basis(x: FourManifold, basis) -> list:
    for b in basis:
        x.lattice._check(b)
    return list(basis)


def _powers(p: Poly, top: int) -> list[Poly]:
    out = [Poly.constant(p.nvars, 1)]
    for _ in range(top):
        out.append(out[-1] * p)
    return out


# --- Witten's formula -----------------------------------------------------------

def witten_coefficient(x: FourManifold, degree: int, m: int, i: int, k: int) -> Fraction:
    """(δ−2m)! / (2^{k+c−3−m} k! i!) with degree = δ − 2m = i + 2k."""
    return (Fraction(math.factorial(degree), math.factorial(k) * math.factorial(i))
            / Fraction(2) ** (k + x.c - 3 - m))


def witten_poly(x: FourManifold, w: Sequence[int], delta: int, m: int,
                basis: Sequence, gated: bool = True) -> Poly:
    """Witten's formula as a polynomial on span(basis)."""
    _require_simple_type(x)
    _require_degree(delta, m)
    basis = _check_basis(x, basis)
    L = x.lattice
    w = as_class(w)
    nv = len(basis)
    total = Poly.zero(nv)
    if gated and not degree_admissible(x.chi_h, L.pair(w, w), delta):
        return total
    d = delta - 2 * m
    qpow = _powers(quad_form(L, basis), d // 2)
    for kk in x.fundamental_domain():
        weight = (-1) ** L.eps(w, kk) * nu(kk) * x.sw[kk]
        lpow = _powers(linear_form(L, kk, basis), d)
        for k in range(d // 2 + 1):
            i = d - 2 * k
            total = total + lpow[i] * qpow[k] * (weight * witten_coefficient(x, d, m, i, k))
    return total


def witten_invariant(x: FourManifold, query: InvariantQuery) -> Fraction:
    """D^w_X(h^{δ−2m} x^m) from Witten's formula; 0 in inadmissible degrees."""
    p = witten_poly(x, query.w, query.delta, query.m, [query.h])
    return p.evaluate((1,))


def witten_raw(x: FourManifold, w, delta: int, m: int, h) -> Fraction:
    """The Witten sum without the degree-parity gate."""
    p = witten_poly(x, w, delta, m, [as_hclass(h)], gated=False)
    return p.evaluate((1,))


# --- cobordism formula ----------------------------------------------------------

def check_cobordism_conditions(*, w_minus_lam_characteristic: bool, lam_sq: int, c: int,
                               chi_h: int, w_sq: int, delta: int, m: int) -> None:
    """Raise PreconditionError naming the first violated hypothesis."""
    if not w_minus_lam_characteristic:
        raise PreconditionError("w−Λ characteristic")
    index = lam_sq + c + 4 * chi_h
    if index <= delta:
        raise PreconditionError("I(Λ) = Λ²+c+4χ_h > δ", f"I(Λ)={index}, δ={delta}")
    if not degree_admissible(chi_h, w_sq, delta):
        raise PreconditionError("δ ≡ −w²−3χ_h (mod 4)",
                                f"δ={delta}, w²={w_sq}, χ_h={chi_h}")
    if delta - 2 * m < 0:
        raise PreconditionError("δ−2m ≥ 0", f"δ={delta}, m={m}")


def cobordism_conditions(x: FourManifold, w, lam, delta: int, m: int) -> None:
    L = x.lattice
    w, lam = as_class(w), as_class(lam)
    diff = tuple(a - b for a, b in zip(w, lam))
    check_cobordism_conditions(
        w_minus_lam_characteristic=L.is_characteristic(diff), lam_sq=L.pair(lam, lam),
        c=x.c, chi_h=x.chi_h, w_sq=L.pair(w, w), delta=delta, m=m)


def _check_table(table: CoeffTable, chi_h: int, c1sq: int, lam_sq: int, m: int,
                 label: str) -> None:
    got = (table.chi_h, table.c1sq, table.lam_sq, table.m)
    want = (chi_h, c1sq, lam_sq, m)
    if got != want:
        raise PreconditionError(f"coefficient table taken at {label}",
                                f"(χ_h, c₁², Λ², m) = {got}, expected {want}")


def cobordism_poly(x: FourManifold, w, delta: int, m: int, lam, table: CoeffTable,
                   basis: Sequence) -> Poly:
    """The cobordism sum over B'(X) as a polynomial on span(basis)."""
    _require_simple_type(x)
    cobordism_conditions(x, w, lam, delta, m)
    L = x.lattice
    w, lam = as_class(w), as_class(lam)
    _check_table(table, x.chi_h, x.c1sq, L.pair(lam, lam), m, "(χ_h, c₁², Λ², m) of X")
    basis = _check_basis(x, basis)
    d = delta - 2 * m
    qpow = _powers(quad_form(L, basis), d // 2)
    lampow = _powers(linear_form(L, lam, basis), d)
    total = Poly.zero(len(basis))
    for kk in x.fundamental_domain():
        weight = nu(kk) * (-1) ** L.eps(w, kk) * x.sw[kk]
        xval = L.pair(kk, lam)
        lpow = _powers(linear_form(L, kk, basis), d)
        for k in range(d // 2 + 1):
            for j in range(d - 2 * k + 1):
                i = d - 2 * k - j
                b = table.evaluate(i, j, k, xval)
                if b:
                    total = total + lpow[i] * lampow[j] * qpow[k] * (weight * b)
    return total


def cobordism_invariant(x: FourManifold, query: InvariantQuery, lam,
                        table: CoeffTable) -> Fraction:
    p = cobordism_poly(x, query.w, query.delta, query.m, lam, table, [query.h])
    return p.evaluate((1,))


def blown_conditions(x: FourManifold, w, lam, delta: int, m: int) -> None:
    """Cobordism hypotheses for Λ, w + e*, δ + 1 on the blow-up of X.

    e* has square −1 and pairs trivially with classes from X, so the
    blown-up data are computed from those of X without building X # CP̄².
    """
    L = x.lattice
    w, lam = as_class(w), as_class(lam)
    _require_degree(delta, m)
    diff = tuple(a - b for a, b in zip(w, lam))
    # (w−Λ) + e* is characteristic on L ⊕ <−1> iff w−Λ is on L
    check_cobordism_conditions(
        w_minus_lam_characteristic=L.is_characteristic(diff), lam_sq=L.pair(lam, lam),
        c=x.c + 1, chi_h=x.chi_h, w_sq=L.pair(w, w) - 1, delta=delta + 1, m=m)


def cobordism_blown_poly(x: FourManifold, w, delta: int, m: int, lam, table: CoeffTable,
                         basis: Sequence) -> Poly:
    """Blown-up cobordism sum; reads only b̃_{i,j,k} with i ≥ 1."""
    _require_simple_type(x)
    if any(not any(k) for k in x.sw):
        raise PreconditionError("0 ∉ B(X)")
    blown_conditions(x, w, lam, delta, m)
    L = x.lattice
    w, lam = as_class(w), as_class(lam)
    _check_table(table, x.chi_h, x.c1sq - 1, L.pair(lam, lam), m, "(χ_h, c₁²−1, Λ², m)")
    basis = _check_basis(x, basis)
    d = delta - 2 * m
    qpow = _powers(quad_form(L, basis), d // 2)
    lampow = _powers(linear_form(L, lam, basis), d)
    total = Poly.zero(len(basis))
    for kk in x.fundamental_domain():
        weight = (-1) ** L.eps(w, kk) * x.sw[kk]
        xval = L.pair(kk, lam)
        lpow = _powers(linear_form(L, kk, basis), d)
        for k in range(d // 2 + 1):
            for j in range(d - 2 * k + 1):
                i = d - 2 * k - j
                b = table.evaluate(i + 1, j, k, xval)
                if b:
                    factor = Fraction(2 * (i + 1), d + 1) * b * weight
                    total = total + lpow[i] * lampow[j] * qpow[k] * factor
    return total


def cobordism_invariant_blown(x: FourManifold, query: InvariantQuery, lam,
                              table: CoeffTable) -> Fraction:
    p = cobordism_blown_poly(x, query.w, query.delta, query.m, lam, table, [query.h])
    return p.evaluate((1,))


# --- vanishing sums and sign bookkeeping ---------------------------------------------

def scst_vanishing_sum(x: FourManifold, w, j: int, u: int, h1, h2) -> Fraction:
    """Σ over B'(X) of (−1)^ε(w,K) SW'(K) <K,h₁>^j <K,h₂>^u."""
    L = x.lattice
    w = as_class(w)
    if not L.is_characteristic(w):
        raise PreconditionError("w characteristic")
    if any(not any(k) for k in x.sw):
        raise PreconditionError("0 ∉ B(X)")
    if j < 0 or u < 0:
        raise PreconditionError("j, u ≥ 0")
    if j + u >= x.c - 3:
        raise PreconditionError("j+u < c(X)−3", f"j+u={j + u}, c={x.c}")
    if (j + u - x.c) % 2:
        raise PreconditionError("j+u ≡ c(X) (mod 2)", f"j+u={j + u}, c={x.c}")
    total = Fraction(0)
    for kk in x.fundamental_domain():
        total += ((-1) ** L.eps(w, kk) * x.sw[kk]
                  * L.eval(kk, h1) ** j * L.eval(kk, h2) ** u)
    return total


def orientation_identity_check(lattice: Lattice, w, lam, k) -> bool:
    """Compare both sides of the orientation-sign identity mod 2.

    ½(w²−σ) + ½(w² + (w−Λ)·K)  ≡  ε(w,K) − ½(Λ² + Λ·K)
    """
    L = lattice
    w, lam, k = as_class(w), as_class(lam), as_class(k)
    diff = tuple(a - b for a, b in zip(w, lam))
    if not L.is_characteristic(diff):
        raise PreconditionError("w−Λ characteristic")
    if not L.is_characteristic(k):
        raise PreconditionError("K characteristic")
    w_sq = L.pair(w, w)
    lhs2 = 2 * w_sq - L.sigma + L.pair(diff, k)
    rhs2 = L.pair(lam, lam) + L.pair(lam, k)
    if lhs2 % 2 or rhs2 % 2:
        raise ArithmeticError("orientation terms are not integers")
    return (lhs2 // 2 - (L.eps(w, k) - rhs2 // 2)) % 2 == 0


def p_factor(w_coords: Sequence[int], i_coords: Sequence[int]) -> int:
    """For (w₂..wₙ) and (i₂..iₙ): 0 if some w_u + i_u is odd, else 2^{n−1}."""
    if len(w_coords) != len(i_coords):
        raise ValueError("w and i vectors differ in length")
    if any((a + b) % 2 for a, b in zip(w_coords, i_coords)):
        return 0
    return 2 ** len(w_coords)


# --- consistency checks ---------------------------------------------------------

def blowup_consistency_check(x: FourManifold, query: InvariantQuery) -> bool:
    """D^w_X(h^{δ−2m}x^m) against D^{w+e*} on the blow-up with one h replaced by e."""
    lhs = witten_invariant(x, query)
    xt = blow_up(x)
    w_t = query.w + (1,)
    h_t = query.h + (Fraction(0),)
    e = (Fraction(0),) * x.lattice.rank + (Fraction(1),)
    p = witten_poly(xt, w_t, query.delta + 1, query.m, [h_t, e])
    if p.is_zero():
        rhs = Fraction(0)
    else:
        rhs = polarize_slot(p, (0, 1), (1, 0))
    return lhs == rhs


def km_multiplicativity_check(x: FourManifold, w, delta: int, m: int, h) -> bool:
    """D(x² z) = 4 D(z): the value at (δ+4, m+2) is four times that at (δ, m)."""
    a = witten_invariant(x, InvariantQuery(w, delta, m, h))
    b = witten_invariant(x, InvariantQuery(w, delta + 4, m + 2, h))
    return b == 4 * a


def km_single_step_check(x: FourManifold, w, delta: int, m: int, h) -> bool:
    """(δ, m) → (δ+2, m+1) doubles the ungated Witten sum."""
    return witten_raw(x, w, delta + 2, m + 1, h) == 2 * witten_raw(x, w, delta, m, h)


# --- the main theorem mechanism ------------------------------------------------

@dataclass
class MainTheoremReport:
    witten: Fraction
    cobordism: dict[int, Fraction] = field(default_factory=dict)

    @property
    def equal_per_seed(self) -> dict[int, bool]:
        return {s: v == self.witten for s, v in self.cobordism.items()}

    @property
    def seed_independent(self) -> bool:
        return len(set(self.cobordism.values())) <= 1

    @property
    def ok(self) -> bool:
        return all(self.equal_per_seed.values()) and self.seed_independent


def main_theorem_hypotheses(x: FourManifold, query: InvariantQuery, lam,
                            strict: bool = True) -> None:
    L = x.lattice
    lam = as_class(lam)
    _require_simple_type(x)
    if not L.is_characteristic(query.w):
        raise PreconditionError("w characteristic")
    if x.c < 5:
        raise PreconditionError("c(X) ≥ 5", f"c={x.c}")
    if any(not any(k) for k in x.sw):
        raise PreconditionError("0 ∉ B(X)")
    if not L.is_odd():
        raise PreconditionError("Q_X odd")
    if any(a % 2 for a in lam):
        raise PreconditionError("Λ = 2b·Λ₀ (Λ divisible by 2)")
    # for even Λ the two conditions below are linked (Λ₀·K has constant parity),
    # so test the congruence first to report it when both fail
    if any(L.pair(k, lam) % 4 for k in x.sw):
        raise PreconditionError("Λ·K ≡ 0 (mod 4) for all K ∈ B(X)")
    if not any(L.pair(k, lam) == 0 for k in x.sw):
        raise PreconditionError("Λ·K₀ = 0 for some K₀ ∈ B(X)")
    if strict and not is_scst(x, query.w):
        raise PreconditionError("superconformal simple type")
    blown_conditions(x, query.w, lam, query.delta, query.m)


def main_theorem_check(x: FourManifold, query: InvariantQuery, lam,
                       seeds: Sequence[int], strict: bool = True) -> MainTheoremReport:
    """Compare the blown-up cobordism value with Witten's value for each seed.

    With ``strict=False`` the superconformal-simple-type hypothesis is not
    enforced, so the report can exhibit failures on counterfixtures.
    """
    main_theorem_hypotheses(x, query, lam, strict)
    lam = as_class(lam)
    report = MainTheoremReport(witten_invariant(x, query))
    lam_sq = x.lattice.pair(lam, lam)
    for s in seeds:
        table = CoeffTable(x.chi_h, x.c1sq - 1, lam_sq, query.m, seed=s)
        report.cobordism[s] = cobordism_invariant_blown(x, query, lam, table)
    return report
