import random

import pytest
from hypothesis import given, settings, strategies as st

from hwdegen.assembler import (
    AdmissibleCoverData,
    build_quasi_tree_divisors,
    build_three_point_divisors,
    check_decomposition_theorem,
    classify_three_points,
    component_target,
    curve_models,
    enumerate_admissible,
    gamma_max_bound,
    search_max,
    search_max_over_t,
    theta_constant,
    total_gamma,
)
from hwdegen.errors import InputError
from hwdegen.padic import DigitContext
from hwdegen.suites import _random_blocks, _smallest_t0, three_point_curves, worked_two_component_curve


def test_three_points_not_attained_at_t_two():
    result = search_max(curve_models(0, 3, 2), DigitContext(2, 2))
    assert result.complete
    assert result.gamma == 0
    assert not result.attained


def test_three_points_attained_at_t_three():
    result = search_max(curve_models(0, 3, 2), DigitContext(2, 3))
    assert result.attained
    assert result.witness.divisor.coeffs == {"x1": 3, "x2": 5, "x3": 6}


def test_single_loop_attains_zero():
    result = search_max(curve_models(1, 0, 2), DigitContext(2, 2))
    assert result.gamma == result.bound == 0


def test_genus_one_two_points():
    result = search_max_over_t(curve_models(1, 2, 2), 2, 6)
    assert result.attained
    assert result.gamma == 1


def test_budget_marks_search_incomplete():
    result = search_max(curve_models(0, 4, 2), DigitContext(2, 3), budget=1, stop_at_bound=False)
    assert not result.complete
    assert result.explored == 1


def test_targets():
    assert component_target([0, 0, 0], 3, genus=2) == 2
    assert component_target([1, 2], 3) == 0
    assert component_target([3, 5, 6], 7) == 1
    assert gamma_max_bound(curve_models(2, 0, 2)) == 1
    assert gamma_max_bound(curve_models(0, 4, 2)) == 2


def test_admissible_data_validation():
    curve = curve_models(0, 4, 2)
    ctx = DigitContext(2, 2)
    with pytest.raises(InputError):
        AdmissibleCoverData(curve, ctx, {"x1": 1, "x2": 1, "x3": 1, "x4": 0})
    with pytest.raises(InputError):
        AdmissibleCoverData(curve, ctx, {"x1": 3, "x2": 0, "e1.1": 0, "x3": 0, "x4": 0})
    with pytest.raises(InputError):
        AdmissibleCoverData(curve, ctx, {"nope": 1})


def test_positive_genus_needs_supplied_invariants():
    curve = worked_two_component_curve()
    ctx = DigitContext(2, 2)
    data = AdmissibleCoverData(curve, ctx, {"x1": 1, "x2": 1, "e.1": 1, "e.2": 2, "x3": 1})
    with pytest.raises(InputError):
        total_gamma(data)
    report = check_decomposition_theorem(data, {"v1": 0, "v2": 1})
    assert report.global_gamma == 1 + report.graph_term


def test_theta_constant():
    assert [theta_constant(g) for g in (0, 1, 2)] == [0, 1, 6]


def test_worked_chain_family():
    curve = worked_two_component_curve()
    t0 = _smallest_t0(curve)
    assert t0 == 3
    built = build_quasi_tree_divisors(curve, t0=t0, families="chain")
    assert built.global_divisor.coeffs == {"x1": 57, "x2": 14, "x3": 55}
    assert len(built.families) == 2
    assert all(built.checks().values())


def test_threshold_enforced():
    with pytest.raises(InputError):
        build_quasi_tree_divisors(worked_two_component_curve(), t0=1)


@pytest.mark.parametrize("case", ["single", "two-one", "chain", "star"])
def test_three_point_cases(case):
    curve = three_point_curves()[case]
    marked = sorted(curve.graph.open_edges)
    assert classify_three_points(curve.graph, marked)[0] == case
    k = 3
    blocks = _random_blocks(random.Random(1), marked, 2, [k, k, k])
    built = build_three_point_divisors(curve, blocks, [k, k, k])
    assert built.case == case
    assert all(built.checks().values())


@settings(max_examples=20)
@given(st.sampled_from([(0, 3), (0, 4), (1, 1), (2, 0)]), st.integers(0, 10**6))
def test_global_invariant_never_exceeds_target(kind, seed):
    curve = curve_models(*kind, 2)
    rng = random.Random(seed)
    ctx = DigitContext(2, 2)
    for data in enumerate_admissible(curve, ctx):
        if rng.random() < 0.2:
            report = check_decomposition_theorem(data)
            assert report.global_gamma <= report.global_target
            assert report.agrees
