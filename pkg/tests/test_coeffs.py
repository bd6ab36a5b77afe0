import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourinv.coeffs import CoeffTable
from fourinv.diffops import SeqFn, binomial_nabla1


def test_index_n():
    assert CoeffTable(2, -3, 0, 0).n == 2
    assert CoeffTable(2, -1, 0, 0).n == 0


def test_closed_form_values():
    t = CoeffTable(2, -3, 0, 1)        # n = 2, m = 1
    # (A−2m)!/(k!i!) · 2^{m−k−n} with A = i + j + 2k + 2m
    assert t(2, 0, 0, 7) == Fraction(math.factorial(2), 2) * Fraction(1, 2)
    assert t(3, 0, 1, 0) == Fraction(math.factorial(5), 6) * Fraction(1, 4)
    assert t(4, 1, 0, 3) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 4), st.integers(0, 2), st.integers(0, 3),
       st.integers(0, 3), st.integers(-8, 8))
def test_closed_form_is_independent_of_x_and_seed(q, nb, m, i, k, x):
    t = CoeffTable(q, q - nb - 3, 4, m, seed=1)
    i += t.n
    assert t(i, 0, k, x) == t(i, 0, k, 0) == CoeffTable(q, q - nb - 3, 4, m, seed=9)(i, 0, k, x)


def test_low_region_parity_zeros():
    t = CoeffTable(2, -4, 0, 0, seed=3)   # n = 3
    for i in range(3):
        for u in range(3 - i):
            if (u - 3 - i) % 2 == 0:
                assert t.beta(u, i, 0, 0) == 0
            else:
                assert t.beta(u, i, 0, 0) != 0


def test_low_region_degree_and_kernel():
    t = CoeffTable(3, -2, 6, 1, seed=5)   # n = 2
    for i in range(t.n):
        assert len(t.low_poly(i, 0, 0)) <= t.n - i
        f = SeqFn(lambda x, i=i: t(i, 0, 0, x))
        assert all(binomial_nabla1(4, t.n - i, f)(x) == 0 for x in range(-8, 9, 4))


def test_violation_breaks_kernel():
    t = CoeffTable(3, -2, 6, 1, seed=5, violations={(1, 0, 0)})
    f = SeqFn(lambda x: t(1, 0, 0, x))
    assert binomial_nabla1(4, t.n - 1, f)(0) != 0


def test_beta_scale_and_seed():
    a = CoeffTable(2, -4, 0, 0, seed=3)
    b = CoeffTable(2, -4, 0, 0, seed=3, beta_scale=Fraction(5, 2))
    assert b.beta(0, 0, 0, 0) == Fraction(5, 2) * a.beta(0, 0, 0, 0)
    assert a == CoeffTable(2, -4, 0, 0, seed=3)
    assert any(a.beta(u, 0, j, 0) != CoeffTable(2, -4, 0, 0, seed=4).beta(u, 0, j, 0)
               for u in range(3) for j in range(3))


def test_sign_relation_in_high_region():
    # b̃(−x) = (−1)^{n+3+i} b̃(x) for x ≡ 0 (mod 4), A ≡ Λ²+n+3 (mod 4), Λ² even
    t = CoeffTable(2, -3, 2, 1)   # n = 2, Λ² = 2, m = 1
    checked = 0
    for i in range(2, 7):
        for k in range(3):
            a = i + 2 * k + 2
            if (a - 2 - 2 - 3) % 4 == 0:
                checked += 1
                assert t(i, 0, k, -8) == (-1) ** (2 + 3 + i) * t(i, 0, k, 8)
    assert checked


def test_invalid_arguments():
    with pytest.raises(ValueError):
        CoeffTable(2, -3, 0, -1)
    with pytest.raises(ValueError):
        CoeffTable(2, -3, 0, 0)(-1, 0, 0, 0)
