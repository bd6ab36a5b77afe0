"""Exact multivariate polynomials over Q and the algebra built on them.

Polynomials are functions of h ∈ H₂(X; Q).  By default the variables are
the lattice coordinates of h, but the form constructors accept a
``basis`` of homology vectors, in which case the variables are the
coefficients of h in that basis: the polynomial is the restriction of the
function to the spanned subspace.  Restriction is a ring homomorphism and
commutes with polarization, which keeps the evaluators working in a
handful of variables instead of b₂ of them.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .lattice import Lattice

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exp, c in dict(self.terms).items():
            exp = tuple(exp)
            if len(exp) != self.nvars:
                raise ValueError("exponent length does not match nvars")
            c = Fraction(c)
            if c:
                clean[exp] = c
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # construction

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c
                       for i, c in enumerate(coeffs)})

    @classmethod
    def quadratic(cls, matrix: Sequence[Sequence]) -> "Poly":
        """The form x ↦ xᵀ·matrix·x (matrix assumed symmetric)."""
        n = len(matrix)
        terms: dict[Exponent, Fraction] = {}
        for i in range(n):
            for j in range(i, n):
                c = matrix[i][j] if i == j else 2 * matrix[i][j]
                if c:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = terms.get(tuple(e), 0) + Fraction(c)
        return cls(n, terms)

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different variable sets")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exp: Exponent) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if mixed (zero has none)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, a in zip(pt, e):
                if a:
                    term *= x ** a
            total += term
        return total

    def dump(self) -> str:
        """Sorted ``coeff * x1^a1 ... xn^an`` lines, for diffing."""
        lines = []
        for e in sorted(self.terms, reverse=True):
            mono = " ".join(f"x{i + 1}^{a}" for i, a in enumerate(e) if a)
            lines.append(f"{self.terms[e]} * {mono}" if mono else f"{self.terms[e]}")
        return "\n".join(lines)


# --- forms on a (sub)space ---------------------------------------------------

def _basis_or_identity(lattice: Lattice, basis):
    if basis is None:
        return None
    return [tuple(Fraction(x) for x in b) for b in basis]


def linear_form(lattice: Lattice, k: Sequence[int], basis=None) -> Poly:
    """h ↦ <K, h> as a degree-one polynomial."""
    if basis is None:
        return Poly.linear(lattice.covector(k))
    return Poly.linear([lattice.eval(k, b) for b in basis])


def quad_form(lattice: Lattice, basis=None) -> Poly:
    """h ↦ Q_X(h) as a degree-two polynomial."""
    if basis is None:
        return Poly.quadratic(lattice.gram)
    bs = _basis_or_identity(lattice, basis)
    mat = [[lattice.eval(bi, bj) for bj in bs] for bi in bs]
    return Poly.quadratic(mat)


# --- polarization ------------------------------------------------------------

def _require_homogeneous(f: Poly) -> int:
    d = f.homogeneous_degree()
    if d is None:
        raise ValueError("polynomial is not homogeneous")
    return d


def polarize_slot(f: Poly, e: Sequence, h: Sequence) -> Fraction:
    """M(e, h, …, h) for the symmetric d-linear form M with M(h,…,h) = F(h).

    Computed as (1/d) times the t¹ coefficient of t ↦ F(h + t·e).
    """
    if f.is_zero():
        return Fraction(0)
    d = _require_homogeneous(f)
    if d < 1:
        raise ValueError("polarization needs degree ≥ 1")
    hs = [Fraction(x) for x in h]
    es = [Fraction(x) for x in e]
    lin = Fraction(0)
    for exp, c in f.terms.items():
        # truncated product of (h_j + t e_j)^{a_j}: track (t^0, t^1) coefficients
        c0, c1 = Fraction(1), Fraction(0)
        for hj, ej, a in zip(hs, es, exp):
            if not a:
                continue
            p0 = hj ** a
            p1 = a * hj ** (a - 1) * ej
            c0, c1 = c0 * p0, c0 * p1 + c1 * p0
        lin += c * c1
    return lin / d


def full_polarize(f: Poly, args: Sequence[Sequence]) -> Fraction:
    """M(h₁, …, h_d) by inclusion–exclusion over subsets of the arguments."""
    if f.is_zero():
        return Fraction(0)
    d = _require_homogeneous(f)
    if len(args) != d:
        raise ValueError(f"expected {d} arguments, got {len(args)}")
    vecs = [[Fraction(x) for x in a] for a in args]
    total = Fraction(0)
    for mask in range(1 << d):
        size = bin(mask).count("1")
        point = [Fraction(0)] * f.nvars
        for i in range(d):
            if mask >> i & 1:
                point = [p + x for p, x in zip(point, vecs[i])]
        total += (-1) ** (d - size) * f.evaluate(point)
    return total / math.factorial(d)


# --- algebraic independence and coefficient extraction ---------------------------

def _kernel_basis(lattice: Lattice, forms: Sequence[Sequence[int]]):
    rows = [list(lattice.covector(t)) for t in forms]
    return _linalg.nullspace(rows, lattice.rank)


def _q_nonzero_vector(lattice: Lattice, kernel):
    for v in kernel:
        if lattice.qform(v):
            return v
    for a, b in itertools.combinations(kernel, 2):
        if lattice.eval(a, b):
            return tuple(x + y for x, y in zip(a, b))
    return None


def check_algebraic_independence(lattice: Lattice, forms: Sequence[Sequence[int]],
                                 use_q: bool = True) -> bool:
    """Linear independence of the <T_i, ·>, plus Q ≠ 0 on their joint kernel."""
    rows = [list(lattice.covector(t)) for t in forms]
    if _linalg.rank(rows, lattice.rank) != len(forms):
        return False
    if not use_q:
        return True
    kernel = _kernel_basis(lattice, forms) if forms else [
        lattice.basis_vector(i) for i in range(lattice.rank)]
    return _q_nonzero_vector(lattice, kernel) is not None


class FormChart:
    """Coordinates on a subspace in which given linear forms are coordinates.

    Picks v in the joint kernel of the forms T_1..T_r with Q(v) ≠ 0 and
    vectors u_1..u_r in the Q-orthogonal complement of v with
    T_i(u_j) = δ_ij.  On h = Σ t_j u_j + s v one has T_i(h) = t_i and
    Q(h) = Q_U(t) + Q(v)·s².  A polynomial expression F(T, Q) restricted to
    this subspace therefore determines F, and :meth:`extract` recovers its
    coefficients from the restricted polynomial.
    """

    def __init__(self, lattice: Lattice, forms: Sequence[Sequence[int]]):
        if not check_algebraic_independence(lattice, forms, True):
            raise ValueError("forms and Q are not algebraically independent")
        self.lattice = lattice
        self.forms = [tuple(t) for t in forms]
        r = len(forms)
        v = _q_nonzero_vector(lattice, _kernel_basis(lattice, forms))
        rows = [list(lattice.covector(t)) for t in forms] + [list(lattice.covector(v))]
        us = []
        for j in range(r):
            rhs = [int(i == j) for i in range(r)] + [0]
            us.append(_linalg.solve_particular(rows, lattice.rank, rhs))
        self.v = v
        self.us = us
        self.basis = us + [v]
        self.nvars = r + 1
        self.q_v = lattice.qform(v)

    def linear(self, k: Sequence[int]) -> Poly:
        return linear_form(self.lattice, k, self.basis)

    def quad(self) -> Poly:
        return quad_form(self.lattice, self.basis)

    def extract(self, p: Poly) -> dict[tuple[Exponent, int], Fraction]:
        """Coefficients c[α, k] with p = Σ c[α, k]·T^α·Q^k."""
        if p.nvars != self.nvars:
            raise ValueError("polynomial is not expressed in this chart")
        r = self.nvars - 1
        q_u = Poly(r, {e[:r]: c for e, c in self.quad().terms.items() if e[r] == 0})
        by_s: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in p.terms.items():
            by_s.setdefault(e[r], {})[e[:r]] = c
        if any(l % 2 for l in by_s):
            raise ValueError("polynomial is not in the algebra generated by the forms and Q")
        kmax = max(by_s, default=0) // 2
        g: dict[int, Poly] = {}
        a = self.q_v
        for kk in range(kmax, -1, -1):
            rest = Poly(r, by_s.get(2 * kk, {}))
            for k2, gk in g.items():
                rest = rest - gk * (q_u ** (k2 - kk)) * (math.comb(k2, kk) * a ** kk)
            g[kk] = rest * (1 / a ** kk)
        q_full = self.quad()
        recomposed = Poly.zero(self.nvars)
        for k2, gk in g.items():
            lifted = Poly(self.nvars, {e + (0,): c for e, c in gk.terms.items()})
            recomposed = recomposed + lifted * q_full ** k2
        if recomposed != p:
            raise ValueError("polynomial is not in the algebra generated by the forms and Q")
        return {(e, k2): c for k2, gk in g.items() for e, c in gk.terms.items()}


def extract_by_solve(lattice: Lattice, forms: Sequence[Sequence[int]], p: Poly,
                     ) -> dict[tuple[Exponent, int], Fraction]:
    """Same coefficients as :meth:`FormChart.extract`, by a direct linear solve.

    Expands every product T^α Q^k of the right degree in the full lattice
    coordinates and solves for the combination equal to ``p``.  Only
    practical for small ranks; used to cross-check the chart.
    """
    d = p.homogeneous_degree()
    if d is None:
        raise ValueError("polynomial is not homogeneous")
    lins = [linear_form(lattice, t) for t in forms]
    q = quad_form(lattice)
    r = len(forms)
    labels, columns = [], []
    for k in range(d // 2 + 1):
        for combo in itertools.combinations_with_replacement(range(r), d - 2 * k):
            alpha = tuple(combo.count(i) for i in range(r))
            prod = q ** k
            for i, a in enumerate(alpha):
                if a:
                    prod = prod * lins[i] ** a
            labels.append((alpha, k))
            columns.append(prod)
    monos = sorted({e for c in columns for e in c.terms} | set(p.terms))
    rows = [[c.coefficient(m) for c in columns] for m in monos]
    rhs = [p.coefficient(m) for m in monos]
    sol = _linalg.solve_least(rows, len(columns), rhs)
    if sol is None:
        raise ValueError("polynomial is not in the algebra generated by the forms and Q")
    return {lab: c for lab, c in zip(labels, sol) if c}


def lift_exponent(alpha: Iterable[int]) -> Exponent:
    return tuple(alpha)
