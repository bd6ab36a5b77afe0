import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fourinv.diffops import (KernelConditionError, SeqFn, WindowError, binomial_nabla1,
                             iterated_nabla1, nabla, nabla_chain, permutation_sum,
                             poly_eval, poly_from_kernel, z2_scale)

small = st.integers(-4, 4)
coef = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def test_z2_scale():
    assert z2_scale(0, 7) == 0 and z2_scale(1, 7) == 7 and z2_scale(3, -2) == -2


def test_nabla_on_constants():
    c = SeqFn.constant(5)
    assert nabla(1, 3, c)(2) == 0
    assert nabla(0, 3, c)(2) == 10


def test_nabla_on_square_matches_sympy():
    t = sympy.symbols("t")
    f = SeqFn.from_callable(lambda x: x * x)
    want = sympy.expand(t ** 2 - (t + 2) ** 2)
    for x in range(-3, 4):
        assert nabla(1, 2, f)(x) == want.subs(t, x)


def test_windows_shrink_and_raise():
    f = SeqFn.from_table({x: x for x in range(0, 10)})
    g = nabla(1, 3, f)
    assert (g.lo, g.hi) == (0, 6)
    assert g(6) == -3
    with pytest.raises(WindowError):
        g(7)
    with pytest.raises(WindowError):
        f(-1)


def test_permutation_sum_example():
    f = SeqFn.from_callable(lambda x: x * x)
    # φ over {0,1}²: x² − (x+1)² − (x+2)² + (x+3)² = 4 at every x
    assert permutation_sum(f, 0, [1, 2], [1, 1]) == 4
    assert permutation_sum(f, 5, [1, 2], [1, 1]) == 4


def test_length_mismatch():
    with pytest.raises(ValueError):
        nabla_chain([1], [1, 1], SeqFn.constant(1))
    with pytest.raises(ValueError):
        permutation_sum(SeqFn.constant(1), 0, [1], [])


def test_iterated_nabla_examples():
    sq = SeqFn.from_callable(lambda x: x * x)
    assert iterated_nabla1(2, 0, sq)(3) == 9
    assert iterated_nabla1(2, 2, sq)(0) == 8
    assert iterated_nabla1(1, 3, sq)(7) == 0


def test_poly_from_kernel_examples():
    assert poly_from_kernel(4, 1, [3, 3, 3]) == [3]
    # g(x) = x² − x sampled at f(kλ) = g(k)
    assert poly_from_kernel(2, 3, [k * k - k for k in range(7)]) == [0, -1, 1]
    assert poly_from_kernel(2, 2, [0] * 5) == []


def test_poly_from_kernel_failures():
    with pytest.raises(KernelConditionError) as info:
        poly_from_kernel(1, 2, [2 ** k for k in range(5)])
    assert info.value.witness == 0
    with pytest.raises(ValueError, match="need samples"):
        poly_from_kernel(1, 2, [1, 1, 1])
    with pytest.raises(ValueError):
        poly_from_kernel(0, 2, [0] * 5)


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.lists(st.integers(0, 3), min_size=4,
                                                          max_size=4),
       st.lists(coef, min_size=1, max_size=5), small)
def test_permutation_sum_equals_chain(ps, qs, coeffs, x):
    qs = qs[:len(ps)]
    f = SeqFn(lambda t: poly_eval(coeffs, t))
    assert permutation_sum(f, x, ps, qs) == nabla_chain(ps, qs, f)(x)


@settings(max_examples=60, deadline=None)
@given(st.integers(-4, 4).filter(bool), st.integers(0, 5), st.lists(coef, min_size=1,
                                                                    max_size=6), small)
def test_binomial_form_equals_composition(lam, n, coeffs, x):
    f = SeqFn(lambda t: poly_eval(coeffs, t))
    assert binomial_nabla1(lam, n, f)(x) == iterated_nabla1(lam, n, f)(x)


@settings(max_examples=60, deadline=None)
@given(st.integers(-4, 4).filter(bool), st.lists(coef, min_size=1, max_size=5))
def test_reconstruction_round_trip(lam, coeffs):
    n = len(coeffs)
    samples = [poly_eval(coeffs, k) for k in range(2 * n + 1)]
    got = poly_from_kernel(lam, n, samples)
    trimmed = list(coeffs)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert got == trimmed


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.lists(coef, min_size=2, max_size=5),
       coef.filter(bool))
def test_degree_raised_by_one_from_difference(lam, low, lead):
    # g of exact degree n+1; ∇¹_λ f(λx) = g(x) − g(x+1) has degree n
    g = list(low) + [lead]
    n = len(g) - 2
    diff = [poly_eval(g, k) - poly_eval(g, k + 1) for k in range(2 * (n + 1) + 1)]
    assert len(poly_from_kernel(lam, n + 1, diff)) - 1 == n
    rebuilt = poly_from_kernel(lam, n + 2, [poly_eval(g, k) for k in range(2 * (n + 2) + 1)])
    assert len(rebuilt) - 1 == n + 1


def test_binomial_weights():
    f = SeqFn.from_callable(lambda x: Fraction(1, 1 + x * x))
    got = binomial_nabla1(3, 4, f)(1)
    want = sum((-1) ** i * math.comb(4, i) * Fraction(1, 1 + (1 + 3 * i) ** 2) for i in range(5))
    assert got == want


def test_permutation_sum_second_difference_of_linear():
    f = SeqFn.from_callable(lambda x: x)
    assert permutation_sum(f, 3, [1, 1], [1, 1]) == 0
    assert permutation_sum(SeqFn.constant(3), 0, [2, 5, 1], [0, 0, 0]) == 24
