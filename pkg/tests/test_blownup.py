import pytest

from fourinv.blownup import (blownup_identity_detail, build_fixture, default_lam_sq,
                             verify_blownup_identity)
from fourinv.coeffs import CoeffTable
from fourinv.errors import PreconditionError
from fourinv.invariants import cobordism_conditions
from fourinv.polyalg import check_algebraic_independence


def model_table(q, n, p, j, k, m, seed=0, **kw):
    return CoeffTable(q, q - n - 3, default_lam_sq(q, n, p, j, k, m), m, seed=seed, **kw)


@pytest.mark.parametrize("n, p", [(3, 1), (3, 2), (4, 1), (4, 3)])
def test_fixture_data(n, p):
    t = model_table(2, n, p, 1, 0, 0)
    fx = build_fixture(2, n, p, 1, 0, 0, t)
    L = fx.manifold.lattice
    assert L.pair(fx.lam, fx.lam) == t.lam_sq
    assert L.pair(fx.k0, fx.lam) == t.lam_sq % 2
    assert fx.lam_coords[0] == -(t.lam_sq % 2 + 2 * (n - p))
    assert fx.lam_coords[p:] == (2,) * (n - p)
    assert L.is_characteristic(tuple(a - b for a, b in zip(fx.w, fx.lam)))
    assert check_algebraic_independence(L, fx.forms)
    # w̃ has odd coefficient on e_n*, so the Witten-side p-factor vanishes
    assert fx.w_coords[-1] % 2 == 1
    cobordism_conditions(fx.manifold, fx.w, fx.lam, fx.delta, 0)


@pytest.mark.parametrize("n, p", [(3, 1), (3, 2), (4, 1), (4, 3)])
@pytest.mark.parametrize("seed", [0, 1])
def test_model_tables_pass(n, p, seed):
    for j, k in [(0, 0), (1, 0), (0, 1)]:
        t = model_table(2, n, p, j, k, 0, seed=seed)
        rep = blownup_identity_detail(2, n, p, j, k, 0, t)
        assert rep.ok and rep.consistent
        assert rep.lhs_p_factor == 0


@pytest.mark.parametrize("n, p", [(3, 1), (4, 1), (4, 2)])
def test_injected_violation_fails(n, p):
    t = model_table(2, n, p, 0, 0, 0, violations={(p, 0, 0)})
    rep = blownup_identity_detail(2, n, p, 0, 0, 0, t)
    assert not rep.ok
    assert rep.rhs != 0 and rep.consistent
    assert not verify_blownup_identity(2, n, p, 0, 0, 0, t)


def test_last_index_reduces_to_single_difference():
    t = model_table(3, 3, 2, 0, 0, 1)
    rep = blownup_identity_detail(3, 3, 2, 0, 0, 1, t)
    assert rep.ok and rep.rhs_expected == 0


def test_other_values_of_x():
    t = model_table(2, 3, 1, 0, 0, 0)
    for x in (t.lam_sq % 2 + 4, t.lam_sq % 2 - 2):
        assert verify_blownup_identity(2, 3, 1, 0, 0, 0, t, x=x)


@pytest.mark.parametrize("args, message", [
    ((2, 3, 0), "1 ≤ p ≤ n−1"),
    ((2, 3, 3), "1 ≤ p ≤ n−1"),
    ((2, 1, 1), "n ≥ 2"),
    ((1, 3, 1), "q ≥ 2"),
])
def test_fixture_preconditions(args, message):
    q, n, p = args
    t = CoeffTable(q, q - n - 3, 0, 0)
    with pytest.raises(PreconditionError, match=message):
        build_fixture(q, n, p, 0, 0, 0, t)


def test_fixture_rejects_bad_tables():
    with pytest.raises(PreconditionError, match="coefficient table"):
        build_fixture(2, 3, 1, 0, 0, 0, CoeffTable(2, -3, 0, 0))
    y = default_lam_sq(2, 3, 1, 0, 0, 0)
    with pytest.raises(PreconditionError, match="mod 4"):
        build_fixture(2, 3, 1, 0, 0, 0, CoeffTable(2, -4, y + 2, 0))
    with pytest.raises(PreconditionError, match="x ≡"):
        build_fixture(2, 3, 1, 0, 0, 0, CoeffTable(2, -4, y, 0), x=y + 1)
