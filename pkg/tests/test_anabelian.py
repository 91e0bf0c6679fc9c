import pytest
from hypothesis import given, strategies as st

from hwdegen.anabelian import avr_p, avr_p_of_curve, c_constant, invariants_of, recover_type
from hwdegen.errors import InputError
from hwdegen.semigraph import CurveModel, SemiGraph


@pytest.mark.parametrize("g, n, expected", [(2, 3, (6, 0, 3)), (2, 0, (4, 1, 1)), (0, 3, (2, 0, 1))])
def test_invariant_examples(g, n, expected):
    inv = invariants_of(g, n)
    assert (inv.b1, inv.b2, inv.gamma_max) == expected


def test_recovery_examples():
    assert recover_type(6, 0, 3) == (2, 3)
    assert recover_type(4, 1, 1) == (2, 0)


def test_recovery_rejects_impossible_invariants():
    with pytest.raises(InputError):
        recover_type(2, 2, 1)
    with pytest.raises(InputError):
        recover_type(1, 0, 0)


def test_unstable_type_rejected():
    with pytest.raises(InputError):
        invariants_of(0, 2)


def test_c_constant_values():
    assert [c_constant(N) for N in (0, 1, 2, 4)] == [0, 1, 6, 648]


def test_average_p_rank():
    assert avr_p(2, 0) == 1
    assert avr_p(2, 5) == 2
    assert avr_p(1, 1) == 0


def test_average_p_rank_of_smooth_curve_only():
    smooth = CurveModel(SemiGraph(["v"], {}, {"x": "v"}), {"v": 2}, 3)
    assert avr_p_of_curve(smooth) == 1
    nodal = CurveModel(SemiGraph(["v"], {"l": ("v", "v")}, {"x": "v"}), {"v": 1}, 3)
    with pytest.raises(InputError):
        avr_p_of_curve(nodal)


@given(st.integers(0, 60), st.integers(0, 60))
def test_round_trip(g, n):
    if 2 * g - 2 + n <= 0:
        return
    inv = invariants_of(g, n)
    assert recover_type(inv.b1, inv.b2, inv.gamma_max) == (g, n)
