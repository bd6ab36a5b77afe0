"""Standard four-manifolds at the level of lattice + Seiberg-Witten data.

A :class:`FourManifold` carries the intersection lattice and the function
SW' on characteristic classes (the sum of SW over spin-c structures with a
given first Chern class).  b¹ = 0 is assumed throughout, so e = 2 + b₂.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, NamedTuple, Sequence

from . import _linalg
from .errors import PreconditionError
from .lattice import Lattice, Vector, add, as_class, neg


class CharNumbers(NamedTuple):
    e: int
    sigma: int
    chi_h: int
    c1sq: int
    c: int


def _canonical(k: Vector) -> Vector:
    """Representative of {K, −K} whose first nonzero coordinate is positive."""
    for x in k:
        if x:
            return k if x > 0 else neg(k)
    return k


@dataclass(frozen=True, eq=False)
class FourManifold:
    lattice: Lattice
    sw: Mapping[Vector, int]

    def __post_init__(self):
        table = {as_class(k): int(v) for k, v in dict(self.sw).items()}
        object.__setattr__(self, "sw", table)
        L = self.lattice
        e = 2 + L.rank
        if (e + L.sigma) % 4:
            raise ValueError(f"χ_h = (e+σ)/4 is not an integer (e={e}, σ={L.sigma})")
        chi_h = (e + L.sigma) // 4
        for k, v in table.items():
            if len(k) != L.rank:
                raise ValueError(f"class {k} has the wrong length for rank {L.rank}")
            if v == 0:
                raise ValueError(f"SW' table stores a zero value at {k}")
            if not L.is_characteristic(k):
                raise ValueError(f"basic class {k} is not characteristic")
        for k, v in table.items():
            if table.get(neg(k)) != (-1) ** chi_h * v:
                raise ValueError(f"SW' table violates conjugation symmetry at {k}")
        bp, _ = L.signature()
        if bp < 3 or bp % 2 == 0:
            raise ValueError(f"b⁺ = {bp}; a standard manifold needs b⁺ ≥ 3 odd")

    def __eq__(self, other):
        if not isinstance(other, FourManifold):
            return NotImplemented
        return self.lattice == other.lattice and self.sw == other.sw

    __hash__ = None

    @cached_property
    def char_numbers(self) -> CharNumbers:
        e = 2 + self.lattice.rank
        sigma = self.lattice.sigma
        chi_h = (e + sigma) // 4
        c1sq = 2 * e + 3 * sigma
        return CharNumbers(e, sigma, chi_h, c1sq, chi_h - c1sq)

    @property
    def chi_h(self) -> int:
        return self.char_numbers.chi_h

    @property
    def c1sq(self) -> int:
        return self.char_numbers.c1sq

    @property
    def c(self) -> int:
        return self.char_numbers.c

    def basic_classes(self) -> frozenset[Vector]:
        return frozenset(self.sw)

    def fundamental_domain(self) -> list[Vector]:
        """One class from each {K, −K} orbit of B(X), sorted."""
        return sorted({_canonical(k) for k in self.sw})

    @cached_property
    def _simple_type(self) -> bool:
        c1sq = self.c1sq
        return all(self.lattice.pair(k, k) == c1sq for k in self.sw)

    def has_simple_type(self) -> bool:
        return self._simple_type

    def with_sw(self, sw: Mapping[Vector, int]) -> "FourManifold":
        return FourManifold(self.lattice, sw)


def char_numbers(x: FourManifold) -> CharNumbers:
    return x.char_numbers


def nu(k: Sequence[int]) -> Fraction:
    """½ at the zero class, 1 elsewhere."""
    return Fraction(1, 2) if not any(k) else Fraction(1)


def blow_up(x: FourManifold) -> FourManifold:
    """X # CP̄²: lattice ⊕ ⟨−1⟩, basic classes K ± e* with SW'(K ± e*) = SW'(K)."""
    if not x.has_simple_type():
        raise PreconditionError("Seiberg-Witten simple type",
                                "the blow-up formula is only available there")
    lat = x.lattice.direct_sum(Lattice(((-1,),)))
    sw = {}
    for k, v in x.sw.items():
        sw[k + (1,)] = v
        sw[k + (-1,)] = v
    return FourManifold(lat, sw)


def signed_sw(x: FourManifold, w: Sequence[int]) -> list[tuple[Vector, int]]:
    """(K, (−1)^ε(w,K) SW'(K)) over all of B(X), sorted by K."""
    L = x.lattice
    return [(k, (-1) ** L.eps(w, k) * v) for k, v in sorted(x.sw.items())]


def _power_sum_vanishes(vectors: Sequence[Sequence[int]], weights: Sequence[int],
                        degree: int) -> bool:
    """Whether h ↦ Σ weight·(v·h)^degree is the zero polynomial.

    Restricts h to a set of coordinates on which the v's span the same
    space as on the full set (pivot columns), then compares every monomial
    coefficient Σ weight·Π v_j^{α_j} to zero in exact integer arithmetic.
    """
    if not vectors:
        return True
    ncols = len(vectors[0])
    cols = _linalg.pivot_columns([list(v) for v in vectors], ncols)
    reduced = [[v[j] for j in cols] for v in vectors]
    for combo in itertools.combinations_with_replacement(range(len(cols)), degree):
        total = 0
        for vec, wt in zip(reduced, weights):
            term = wt
            for j in combo:
                term *= vec[j]
                if not term:
                    break
            total += term
        if total:
            return False
    return True


def scst_degrees(x: FourManifold) -> range:
    """Degrees i ≤ c(X) − 4 at which the signed SW polynomials must vanish."""
    return range(0, max(x.c - 3, 0))


def is_scst(x: FourManifold, w: Sequence[int]) -> bool:
    """Superconformal simple type, tested for one characteristic w.

    True when c(X) ≤ 3; otherwise every polynomial
    h ↦ Σ_{K∈B(X)} (−1)^ε(w,K) SW'(K) <K,h>^i with i ≤ c(X) − 4 must vanish
    identically.
    """
    w = as_class(w)
    if not x.lattice.is_characteristic(w):
        raise PreconditionError("w characteristic")
    if x.c <= 3:
        return True
    pairs = signed_sw(x, w)
    covs = [x.lattice.covector(k) for k, _ in pairs]
    wts = [s for _, s in pairs]
    return all(_power_sum_vanishes(covs, wts, i) for i in scst_degrees(x))


# --- the blown-up example family -------------------------------------------

class ExampleXq(NamedTuple):
    manifold: FourManifold
    K: Vector
    f1: Vector
    f2: Vector


@lru_cache(maxsize=None)
def example_xq(q: int) -> ExampleXq:
    """Lattice-level model of X_q: χ_h = q, c₁² = q − 3, c = 3.

    The lattice is H ⊕ ⟨1⟩^{2q−2} ⊕ ⟨−1⟩^{9q+1}; f₁, f₂ span the
    hyperbolic summand and K lives on the diagonal part with q entries 3,
    q − 2 entries 1 on the positive side and all negative entries 1, so
    K² = q − 3.  SW'(K) = 1 and SW'(−K) = (−1)^q.
    """
    if q < 2:
        raise PreconditionError("q ≥ 2")
    npos, nneg = 2 * q - 2, 9 * q + 1
    lat = Lattice.hyperbolic().direct_sum(Lattice.diagonal([1] * npos + [-1] * nneg))
    k = (0, 0) + (3,) * q + (1,) * (q - 2) + (1,) * nneg
    f1 = (1, 0) + (0,) * (npos + nneg)
    f2 = (0, 1) + (0,) * (npos + nneg)
    x = FourManifold(lat, {k: 1, neg(k): (-1) ** q})
    return ExampleXq(x, k, f1, f2)


@lru_cache(maxsize=None)
def example_xqn(q: int, n: int) -> FourManifold:
    """X_q blown up n times."""
    if n < 0:
        raise PreconditionError("n ≥ 0")
    x = example_xq(q).manifold
    for _ in range(n):
        x = blow_up(x)
    return x


def exceptional_class(q: int, n: int, u: int) -> Vector:
    """e_u* (1 ≤ u ≤ n) in the coordinates of X_q(n)."""
    if not 1 <= u <= n:
        raise ValueError("exceptional index out of range")
    base = 11 * q + 1
    return tuple(int(j == base + u - 1) for j in range(base + n))


def pad(v: Sequence, n: int) -> tuple:
    return tuple(v) + (0,) * n


def k_phi(q: int, n: int, phi: Sequence[int]) -> Vector:
    """K_φ = K + Σ_u (−1)^{φ_u} e_u*."""
    ex = example_xq(q)
    k = pad(ex.K, n)
    for u, bit in enumerate(phi, start=1):
        e = exceptional_class(q, n, u)
        k = add(k, e if bit % 2 == 0 else neg(e))
    return k


def example_classes(q: int, n: int) -> dict[str, Vector]:
    """Named classes of X_q(n): K, K0 = K + Σ e_u*, f1, f2, e1 … en."""
    ex = example_xq(q)
    named = {"K": pad(ex.K, n), "f1": pad(ex.f1, n), "f2": pad(ex.f2, n),
             "K0": k_phi(q, n, (0,) * n)}
    for u in range(1, n + 1):
        named[f"e{u}"] = exceptional_class(q, n, u)
    return named
