"""Named verification suites, runnable from the CLI or from tests.

Each suite returns a :class:`SuiteResult` holding one :class:`Check` per
identity; failing checks carry a counterexample description.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import diffops as D
from .blownup import blownup_identity_detail, default_lam_sq
from .coeffs import CoeffTable
from .errors import PreconditionError
from .invariants import (InvariantQuery, blowup_consistency_check, km_multiplicativity_check,
                         km_single_step_check, main_theorem_check, orientation_identity_check,
                         scst_vanishing_sum)
from .lattice import Lattice, add, neg, scale
from .manifold import (FourManifold, blow_up, example_classes, example_xq, example_xqn,
                       is_scst, k_phi)
from .polyalg import Poly, full_polarize, linear_form, polarize_slot, quad_form


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), "" if passed else detail))


class _Tally:
    """Count trials of one identity and keep the first counterexample."""

    def __init__(self):
        self.trials = 0
        self.failure = ""

    def record(self, ok: bool, witness) -> None:
        self.trials += 1
        if not ok and not self.failure:
            self.failure = str(witness)

    def report(self, result: SuiteResult, name: str) -> None:
        result.add(f"{name} ({self.trials} trials)", not self.failure and self.trials > 0,
                   self.failure or "no trials ran")


def _rand_frac(rng: random.Random, lo=-6, hi=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def _rand_h(rng: random.Random, rank: int) -> tuple:
    return tuple(_rand_frac(rng) for _ in range(rank))


def characteristic_sample(lattice: Lattice, base, rng: random.Random, spread: int = 2):
    """base + 2v for a random integer v; characteristic whenever base is."""
    return tuple(b + 2 * rng.randint(-spread, spread) for b in base)


# --- orientation --------------------------------------------------------------------

def suite_orientation(seed: int = 0, trials: int = 1000) -> SuiteResult:
    res = SuiteResult("orientation")
    rng = random.Random(seed)
    names = example_classes(2, 2)
    L = example_xqn(2, 2).lattice
    k0 = names["K0"]
    ident, square = _Tally(), _Tally()
    for _ in range(trials):
        w = tuple(rng.randint(-3, 3) for _ in range(L.rank))
        kappa = characteristic_sample(L, k0, rng)
        lam = tuple(a - b for a, b in zip(w, kappa))
        k = characteristic_sample(L, k0, rng)
        ident.record(orientation_identity_check(L, w, lam, k), (w, lam, k))
        square.record((L.pair(kappa, kappa) - L.sigma) % 8 == 0, kappa)
    ident.report(res, "orientation identity mod 2")
    square.report(res, "characteristic square ≡ σ mod 8")
    return res


# --- difference operators ------------------------------------------------------------

def _random_table(rng: random.Random, lo: int, hi: int) -> D.SeqFn:
    return D.SeqFn.from_table({x: rng.randint(-20, 20) for x in range(lo, hi + 1)})


def suite_diffops(seed: int = 0, trials: int = 200) -> SuiteResult:
    res = SuiteResult("diffops")
    rng = random.Random(seed)

    perm = _Tally()
    for t in range(trials):
        n = 1 + t % 4
        ps = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n)]
        qs = [rng.randint(0, 1) for _ in range(n)]
        f = _random_table(rng, -15, 15)
        g = D.nabla_chain(ps, qs, f)
        for x in range(g.lo, g.hi + 1):
            perm.record(D.permutation_sum(f, x, ps, qs) == g(x), (ps, qs, x))
    perm.report(res, "permutation sum = iterated ∇ (n ≤ 4)")

    binom = _Tally()
    for n in range(7):
        for lam in (1, 2, 3, -2):
            f = _random_table(rng, -20, 20)
            a, b = D.iterated_nabla1(lam, n, f), D.binomial_nabla1(lam, n, f)
            if (a.lo, a.hi) != (b.lo, b.hi):
                binom.record(False, ("window", n, lam))
            for x in range(a.lo, a.hi + 1):
                binom.record(a(x) == b(x), (n, lam, x))
    binom.report(res, "binomial route = composition (n ≤ 6)")

    const = _Tally()
    for n in range(1, 6):
        for _ in range(10):
            c = _rand_frac(rng)
            ps = [rng.randint(-4, 4) for _ in range(n)]
            even = [0] * n
            some_odd = [rng.randint(0, 1) for _ in range(n)]
            if not any(some_odd):
                some_odd[rng.randrange(n)] = 1
            f = D.SeqFn.constant(c)
            const.record(D.nabla_chain(ps, even, f)(0) == 2 ** n * c, ("even", n, ps, c))
            const.record(D.nabla_chain(ps, some_odd, f)(0) == 0, ("odd", n, ps, some_odd, c))
    const.report(res, "constant rule (n ≤ 5)")

    trip = _Tally()
    for deg in range(5):
        for lam in (1, 2, 4):
            coeffs = [_rand_frac(rng) for _ in range(deg + 1)]
            if coeffs[-1] == 0:
                coeffs[-1] = Fraction(1)
            n = deg + 1
            samples = [D.poly_eval(coeffs, x) for x in range(2 * n + 1)]
            f = D.SeqFn.from_table({lam * x: v for x, v in enumerate(samples)})
            g = D.iterated_nabla1(lam, n, f)
            kernel_ok = all(g(x) == 0 for x in range(g.lo, g.hi + 1, lam))
            got = D.poly_from_kernel(lam, n, samples)
            trip.record(kernel_ok and got == coeffs, (deg, lam, coeffs, got))
    trip.report(res, "kernel round trip (degree ≤ 4, λ ∈ {1,2,4})")
    return res


# --- polarization ------------------------------------------------------------------

def _random_homogeneous(rng: random.Random, nvars: int, degree: int) -> Poly:
    terms = {}
    monos = [c for c in itertools.combinations_with_replacement(range(nvars), degree)]
    for combo in rng.sample(monos, min(len(monos), rng.randint(1, 6))):
        exp = tuple(combo.count(i) for i in range(nvars))
        terms[exp] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
    return Poly(nvars, terms)


def suite_polarization(seed: int = 0, trials: int = 100) -> SuiteResult:
    res = SuiteResult("polarization")
    rng = random.Random(seed)
    agree = _Tally()
    for t in range(trials):
        d = 1 + t % 6
        nv = rng.randint(2, 4)
        f = _random_homogeneous(rng, nv, d)
        e, h = _rand_h(rng, nv), _rand_h(rng, nv)
        agree.record(polarize_slot(f, e, h) == full_polarize(f, [e] + [h] * (d - 1)),
                     (f.dump(), e, h))
    agree.report(res, "slot polarization = full polarization")

    closed = _Tally()
    for q, n in ((2, 1), (2, 2), (3, 1)):
        x = example_xqn(q, n)
        L = x.lattice
        names = example_classes(q, n)
        lam = add(names["f1"], scale(2, names["f2"]))
        base = 11 * q + 1
        for phi in itertools.product((0, 1), repeat=n):
            kp = k_phi(q, n, phi)
            for u in range(1, n + 1):
                e = names[f"e{u}"]
                bit = phi[u - 1]
                for i, j, k in ((1, 0, 0), (2, 1, 0), (1, 0, 1), (3, 0, 1), (0, 2, 1), (2, 2, 1)):
                    h = _rand_h(rng, base) + (Fraction(0),) * n
                    basis = [h, e]
                    f = (linear_form(L, kp, basis) ** i * linear_form(L, lam, basis) ** j
                         * quad_form(L, basis) ** k)
                    dgr = i + j + 2 * k
                    got = polarize_slot(f, (0, 1), (1, 0))
                    want = (Fraction(i * (-1) ** (bit + 1), dgr) * L.eval(kp, h) ** max(i - 1, 0)
                            * L.eval(lam, h) ** j * L.qform(h) ** k) if i else Fraction(0)
                    closed.record(got == want, (q, n, phi, u, (i, j, k)))
    closed.report(res, "exceptional-slot closed form")
    return res


# --- blow-up ------------------------------------------------------------------------

def _fixtures(qs=(2, 3), ns=(0, 1, 2)):
    for q in qs:
        for n in ns:
            yield q, n, example_xqn(q, n), example_classes(q, n)


def suite_blowup(seed: int = 0, trials: int = 3, max_delta: int = 8) -> SuiteResult:
    res = SuiteResult("blowup")
    rng = random.Random(seed)
    thm, scst, cons = _Tally(), _Tally(), _Tally()
    for q, n, x, names in _fixtures():
        xt = blow_up(x)
        e = (0,) * x.lattice.rank + (1,)
        ok = (len(xt.sw) == 2 * len(x.sw)
              and all(xt.sw[k + (1,)] == v and xt.sw[k + (-1,)] == v for k, v in x.sw.items())
              and all(xt.sw[neg(k)] == (-1) ** xt.chi_h * v for k, v in xt.sw.items())
              and xt.has_simple_type() and xt.chi_h == x.chi_h and xt.c == x.c + 1
              and not any(xt.lattice.pair(k, e) == 0 for k in xt.sw))
        thm.record(ok, (q, n))
        for _ in range(trials):
            w = characteristic_sample(x.lattice, names["K0"], rng)
            scst.record(is_scst(x, w) == is_scst(xt, w + (1,)), (q, n, w))
        w = names["K0"]
        h = _rand_h(rng, x.lattice.rank)
        for delta in range(max_delta + 1):
            for m in range(delta // 2 + 1):
                cons.record(blowup_consistency_check(x, InvariantQuery(w, delta, m, h)),
                            (q, n, delta, m))
    thm.report(res, "blow-up of basic classes and SW values")
    scst.report(res, "SCST preserved by blow-up")
    cons.report(res, "Donaldson blow-up consistency (δ ≤ 8)")
    return res


# --- SCST ---------------------------------------------------------------------------

def non_scst_manifold() -> FourManifold:
    """c = 5 manifold with B = {±K}: its degree-one signed sum is nonzero."""
    lat = Lattice.diagonal([1, 1, 1] + [-1] * 22)
    k = (3, 3, 1) + (1,) * 22
    return FourManifold(lat, {k: 1, neg(k): 1})


def perturbed_xqn(q: int = 2, n: int = 2) -> FourManifold:
    """X_q(n) with SW'(K₀) doubled (and its conjugate): not SCST."""
    x = example_xqn(q, n)
    k0 = k_phi(q, n, (0,) * n)
    sw = dict(x.sw)
    sw[k0] *= 2
    sw[neg(k0)] *= 2
    return x.with_sw(sw)


def admissible_pairs(c: int):
    return [(j, s - j) for s in range(max(c - 3, 0)) if (s - c) % 2 == 0 for j in range(s + 1)]


def suite_scst(seed: int = 0, trials: int = 50) -> SuiteResult:
    res = SuiteResult("scst")
    rng = random.Random(seed)
    flags, sums = _Tally(), _Tally()
    for q, n, x, names in _fixtures(ns=(0, 1, 2, 3)):
        ws = [names["K0"]] + [characteristic_sample(x.lattice, names["K0"], rng) for _ in range(3)]
        for w in ws:
            flags.record(is_scst(x, w), (q, n, w))
        pairs = admissible_pairs(x.c)
        for _ in range(trials):
            h1, h2 = _rand_h(rng, x.lattice.rank), _rand_h(rng, x.lattice.rank)
            for j, u in pairs:
                sums.record(scst_vanishing_sum(x, ws[0], j, u, h1, h2) == 0, (q, n, j, u))
    flags.report(res, "X_q(n) is SCST for sampled characteristic w")
    sums.report(res, "signed power sums vanish")

    for label, x, w in (("synthetic c=5", non_scst_manifold(), None),
                        ("perturbed X_2(2)", perturbed_xqn(2, 2), None)):
        w = w or sorted(x.sw)[-1]
        h = _rand_h(rng, x.lattice.rank)
        nonzero = any(scst_vanishing_sum(x, w, j, u, h, h) != 0
                      for j, u in admissible_pairs(x.c))
        res.add(f"{label}: not SCST and some sum nonzero", (not is_scst(x, w)) and nonzero,
                f"is_scst={is_scst(x, w)}")
    return res


# --- main theorem -------------------------------------------------------------------

def _smallest_b(x: FourManifold, lam0, delta: int) -> int:
    b = 1
    while (2 * b) ** 2 * x.lattice.pair(lam0, lam0) + x.c + 4 * x.chi_h <= delta:
        b += 1
    return b


def main_theorem_cases(max_delta: int = 10):
    """(label, X, query-maker, Λ) for every fixture in the sweep."""
    for q in (2, 3):
        for n in (2, 3):
            x = example_xqn(q, n)
            names = example_classes(q, n)
            lam0s = [("f1+f2", add(names["f1"], names["f2"])),
                     ("2(f1+f2)+e1+e2",
                      add(scale(2, add(names["f1"], names["f2"])), add(names["e1"], names["e2"])))]
            for delta in range(max_delta + 1):
                if (delta - x.c) % 4:
                    continue
                for m in (0, 1):
                    if delta - 2 * m < 0:
                        continue
                    for lname, lam0 in lam0s:
                        lam = scale(2 * _smallest_b(x, lam0, delta), lam0)
                        yield (q, n, delta, m, lname), x, names, lam


def suite_main_theorem(seed: int = 0, trials: int = 1, seeds: int = 5,
                       max_delta: int = 10) -> SuiteResult:
    res = SuiteResult("main-theorem")
    rng = random.Random(seed)
    eq = _Tally()
    for label, x, names, lam in main_theorem_cases(max_delta):
        for w in (names["K0"], characteristic_sample(x.lattice, names["K0"], rng)):
            for _ in range(trials):
                h = _rand_h(rng, x.lattice.rank)
                rep = main_theorem_check(x, InvariantQuery(w, label[2], label[3], h), lam,
                                         range(seed, seed + seeds))
                eq.record(rep.ok, (label, rep.witten, rep.cobordism))
    eq.report(res, "blown-up cobordism value = Witten value, seed-independent")
    return res


# --- coefficient table ---------------------------------------------------------------

def _closed_form_oracle(i, j, k, m, n) -> Fraction:
    if j:
        return Fraction(0)
    num = math.factorial(i + 2 * k)
    return Fraction(num, math.factorial(k) * math.factorial(i)) * Fraction(2) ** (m - k - n)


def suite_coefficients(seed: int = 0, trials: int = 5) -> SuiteResult:
    res = SuiteResult("coefficients")
    high, kern, parity, sign = _Tally(), _Tally(), _Tally(), _Tally()
    present = 0
    for q in (2, 3):
        for n in (2, 3, 4):
            for m in (0, 1):
                for y in (0, 6):
                    for s in range(seed, seed + trials):
                        t = CoeffTable(q, q - n - 3, y, m, seed=s)
                        for i in range(n, n + 4):
                            for j in range(4):
                                for k in range(4):
                                    for x in (-2, 6):
                                        high.record(t.evaluate(i, j, k, x)
                                                    == _closed_form_oracle(i, j, k, m, n),
                                                    (q, n, m, y, s, i, j, k, x))
                        for p in range(1, n):
                            for j in range(3):
                                for k in range(2):
                                    # tabulate once; the windows overlap
                                    f = D.SeqFn.from_table(
                                        {v: t.evaluate(p, j, k, v)
                                         for v in range(-20, 21 + 4 * (n - p), 4)})
                                    g = D.binomial_nabla1(4, n - p, f)
                                    for x in range(-20, 21, 4):
                                        kern.record(g(x) == 0, (q, n, m, y, s, p, j, k, x))
                        for i in range(n):
                            for u in range(n - i):
                                b = t.beta(u, i, 0, 0)
                                if (u - n - i) % 2 == 0:
                                    parity.record(b == 0, (n, i, u))
                                elif b:
                                    present += 1
                        for i in range(n + 3):
                            for k in range(3):
                                a = i + 2 * k + 2 * m
                                if i >= n and (a - y - n - 3) % 4:
                                    continue
                                for x in (4, 12, 20):
                                    sign.record(t.evaluate(i, 0, k, -x)
                                                == (-1) ** (n + 3 + i) * t.evaluate(i, 0, k, x),
                                                (q, n, m, y, s, i, k, x))
    high.report(res, "closed form for i ≥ n")
    kern.report(res, "(∇¹₄)^{n−p} annihilates the low-index model")
    parity.report(res, "parity zeros of the free coefficients")
    res.add("free coefficients are present", present > 0, "all β vanished")
    sign.report(res, "sign relation on multiples of 4")
    return res


# --- extraction ---------------------------------------------------------------------

def suite_extraction(seed: int = 0, trials: int = 1) -> SuiteResult:
    res = SuiteResult("extraction")
    good, bad, cons = _Tally(), _Tally(), _Tally()
    q, j, k, m = 2, 0, 0, 0
    for n in (3, 4):
        for p in sorted({1, n - 1}):
            y = default_lam_sq(q, n, p, j, k, m)
            for s in range(seed, seed + trials):
                t = CoeffTable(q, q - n - 3, y, m, seed=s)
                rep = blownup_identity_detail(q, n, p, j, k, m, t)
                good.record(rep.ok, (n, p, s, rep))
                cons.record(rep.consistent, (n, p, s, rep))
                tv = CoeffTable(q, q - n - 3, y, m, seed=s, violations={(p, j, k)})
                rep_v = blownup_identity_detail(q, n, p, j, k, m, tv)
                bad.record(not rep_v.ok, (n, p, s, rep_v))
                cons.record(rep_v.consistent, (n, p, s, rep_v))
    good.report(res, "distinguished coefficient vanishes on model tables")
    bad.report(res, "injected degree violation is detected")
    cons.report(res, "extracted coefficient matches the ∇ expression")
    return res


# --- KM simple type -------------------------------------------------------------------

def suite_km(seed: int = 0, trials: int = 1, max_delta: int = 8) -> SuiteResult:
    res = SuiteResult("km")
    rng = random.Random(seed)
    four, two = _Tally(), _Tally()
    for q, n, x, names in _fixtures(ns=(0, 1, 2, 3)):
        for _ in range(trials):
            w = characteristic_sample(x.lattice, names["K0"], rng)
            h = _rand_h(rng, x.lattice.rank)
            for delta in range(max_delta + 1):
                for m in range(delta // 2 + 1):
                    four.record(km_multiplicativity_check(x, w, delta, m, h), (q, n, delta, m))
                    two.record(km_single_step_check(x, w, delta, m, h), (q, n, delta, m))
    four.report(res, "D(x²z) = 4D(z) (δ ≤ 8)")
    two.report(res, "ungated sum doubles under (δ,m) → (δ+2,m+1)")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "orientation": suite_orientation,
    "diffops": suite_diffops,
    "polarization": suite_polarization,
    "blowup": suite_blowup,
    "scst": suite_scst,
    "main-theorem": suite_main_theorem,
    "coefficients": suite_coefficients,
    "extraction": suite_extraction,
    "km": suite_km,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None,
              seeds: int | None = None) -> list[SuiteResult]:
    if name == "all":
        return [r for n in SUITES for r in run_suite(n, seed, trials, seeds)]
    if name not in SUITES:
        raise KeyError(name)
    kwargs = {"seed": seed}
    if trials is not None:
        kwargs["trials"] = trials
    if seeds is not None and name == "main-theorem":
        kwargs["seeds"] = seeds
    return [SUITES[name](**kwargs)]
