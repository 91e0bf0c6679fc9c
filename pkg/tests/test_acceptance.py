"""End-to-end acceptance checks; every comparison is exact."""

import pytest

from hwdegen.report import Report
from hwdegen.suites import (
    anabelian_round_trip,
    block_action,
    cut_identities,
    decomposition,
    digit_columns,
    divisor_constructions,
    graph_formulas,
    hasse_lambda,
    quasi_tree_properties,
    witnesses,
)


def failed(report: Report) -> list[dict]:
    return [c.to_json() for c in report.checks if not c.passed]


def run(suite, **kwargs) -> Report:
    report = Report(suite.__name__)
    suite(report, **kwargs)
    assert report.checks
    return report


@pytest.fixture(scope="module")
def witness_report() -> Report:
    return run(witnesses, p=2, t_max=6)


def test_graph_cover_eigenspaces_match_oracle_and_closed_formulas():
    report = run(graph_formulas, max_vertices=3, max_edges=5, ns=(2, 3, 4, 6))
    assert not failed(report)


def test_cyclic_block_action_vanishes_exactly_on_multiples_of_s():
    report = run(block_action, max_product=12)
    assert not failed(report)


def test_theta_divisor_exists_exactly_for_ordinary_legendre_curves():
    report = run(hasse_lambda, primes=(3, 5))
    assert not failed(report)


def test_shift_degree_invariance_iff_digit_columns():
    report = run(digit_columns, primes=(2, 3, 5), t_max=3, nx_max=4)
    assert not failed(report)


def test_cut_split_identities_for_every_shift():
    report = run(cut_identities, primes=(2, 3, 5), t_max=3, nxs=(3, 4))
    assert not failed(report)


def test_global_maximum_iff_every_component_maximal():
    report = run(decomposition, max_vertices=3, max_marked=4, max_betti=1, p=2, ts=(2, 3, 4))
    assert not failed(report)


def test_search_finds_witnesses_attaining_gamma_max(witness_report):
    checks = [c for c in witness_report.checks if c.claim.startswith("witness-attains")]
    assert len(checks) == 6
    assert [c.to_json() for c in checks if not c.passed] == []


def test_divisor_constructions_pass_structural_checks():
    report = run(divisor_constructions, seed=0, count=50)
    assert not failed(report)
    worked = report.results["divisors"]["worked_example"]
    assert worked["global"] == {"x1": 57, "x2": 14, "x3": 55}


def test_type_recovery_round_trip_and_searched_gamma_max(witness_report):
    report = run(anabelian_round_trip, max_g=50, max_n=50)
    assert not failed(report)
    checks = [c for c in witness_report.checks if c.claim.startswith("gamma-max-matches")]
    assert len(checks) == 6
    assert [c.to_json() for c in checks if not c.passed] == []


def test_quasi_tree_golden_example_and_random_properties():
    report = run(quasi_tree_properties, seed=0, count=200)
    assert not failed(report)
