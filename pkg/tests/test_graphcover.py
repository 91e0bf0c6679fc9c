import pytest
from hypothesis import given, strategies as st

from hwdegen.errors import InputError
from hwdegen.graphcover import (
    CoverSpec,
    build_cover,
    check_single_vertex_formula,
    check_topological_formula,
    check_two_vertex_formula,
    cover_specs,
    cyclic_block_dims,
    eigenspace_dims,
    eigenspace_dims_character,
    eigenspace_dims_closed_form,
    eigenspace_dims_direct,
    eigenspace_dims_orbits,
    etale_two_vertex_spec,
    is_connected_by_search,
    is_connected_cover,
)
from hwdegen.semigraph import SemiGraph, betti_number

ONE_LOOP = SemiGraph(["v"], {"l": ("v", "v")}, {})
TWO_LOOPS = SemiGraph(["v"], {"l": ("v", "v"), "m": ("v", "v")}, {})
THETA = SemiGraph(["a", "b"], {"e1": ("a", "b"), "e2": ("a", "b"), "e3": ("a", "b")}, {})


def test_loop_with_voltage_one_lifts_to_a_two_cycle():
    cover = build_cover(CoverSpec(ONE_LOOP, 2, voltage={"l": 1}))
    total = cover.total_graph()
    assert len(total.vertices) == 2
    assert len(total.closed_edges) == 2
    assert cover.component_count() == 1
    assert betti_number(total) == 1


def test_connectivity():
    assert is_connected_cover(CoverSpec(ONE_LOOP, 2, voltage={"l": 1}))
    assert not is_connected_cover(CoverSpec(ONE_LOOP, 2))
    assert not is_connected_cover(CoverSpec(ONE_LOOP, 4, voltage={"l": 2}))
    assert is_connected_cover(CoverSpec(ONE_LOOP, 4, vertex_stab={"v": 2}, voltage={"l": 1}))


def test_topological_double_cover_of_two_loops():
    spec = CoverSpec(TWO_LOOPS, 2, voltage={"l": 1})
    assert eigenspace_dims(spec) == [2, 1]
    assert check_topological_formula(spec).passed
    assert check_single_vertex_formula(spec).expected == 1


def test_etale_two_vertex_block_example():
    assert eigenspace_dims(etale_two_vertex_spec(2, 2)) == [0, 1, 0, 1]
    assert cyclic_block_dims(2, 2) == [0, 1, 0, 1]


def test_single_vertex_with_half_stabilizer():
    spec = CoverSpec(ONE_LOOP, 4, vertex_stab={"v": 2}, voltage={"l": 1})
    report = check_single_vertex_formula(spec)
    assert report.applies and report.passed
    assert report.observed == 1


def test_single_vertex_fully_ramified_loop():
    spec = CoverSpec(ONE_LOOP, 4, vertex_stab={"v": 4}, edge_stab={"l": 4})
    assert eigenspace_dims(spec)[1] == 0
    assert check_single_vertex_formula(spec).passed


def test_two_vertex_one_etale_edge():
    spec = CoverSpec(THETA, 3, {"a": 3, "b": 3}, {"e1": 1, "e2": 3, "e3": 3})
    report = check_two_vertex_formula(spec)
    assert report.applies and report.passed
    assert report.observed == 1


def test_two_vertex_formula_steps_aside_for_topological_covers():
    spec = CoverSpec(THETA, 2, voltage={"e1": 1})
    report = check_two_vertex_formula(spec)
    assert not report.applies
    assert report.observed == 1
    assert check_topological_formula(spec).passed


def test_rejects_bad_stabilizers():
    with pytest.raises(InputError):
        CoverSpec(ONE_LOOP, 4, vertex_stab={"v": 3})
    with pytest.raises(InputError):
        CoverSpec(ONE_LOOP, 4, vertex_stab={"v": 2}, edge_stab={"l": 4})
    with pytest.raises(InputError):
        CoverSpec(ONE_LOOP, 2, voltage={"zz": 1})


def test_voltage_reverses_with_orientation():
    spec = CoverSpec(THETA, 5, voltage={"e1": 2})
    assert spec.voltage_along("e1", "a") == 2
    assert spec.voltage_along("e1", "b") == 3


BASES = [ONE_LOOP, TWO_LOOPS, THETA, SemiGraph(["a", "b"], {"e": ("a", "b"), "l": ("a", "a")}, {})]


@given(st.sampled_from(BASES), st.integers(1, 6), st.data())
def test_all_routes_agree(base, n, data):
    specs = list(cover_specs(base, n))
    spec = data.draw(st.sampled_from(specs))
    direct = eigenspace_dims_direct(spec)
    assert eigenspace_dims_orbits(spec) == direct
    assert eigenspace_dims_character(spec) == direct
    assert eigenspace_dims_closed_form(spec) == direct
    assert is_connected_cover(spec) == is_connected_by_search(spec)


@given(st.integers(1, 4), st.integers(1, 4))
def test_block_action_matches_graph_cover(s, t):
    assert cyclic_block_dims(s, t) == eigenspace_dims(etale_two_vertex_spec(s, t))
