import pytest
from hypothesis import given, strategies as st

from hwdegen.errors import InputError
from hwdegen.semigraph import (
    CurveModel,
    SemiGraph,
    betti_number,
    is_tree_after_loops,
    loop_edges,
    minimal_path,
    total_genus,
    total_p_rank,
)


@pytest.fixture
def two_vertex_graph():
    # two vertices, two parallel edges, a loop and one open edge
    return SemiGraph(["v1", "v2"], {"e1": ("v1", "v2"), "e2": ("v1", "v2"), "e3": ("v2", "v2")}, {"e4": "v2"})


def test_betti_of_single_vertex():
    assert betti_number(SemiGraph(["v"])) == 0


def test_betti_counts_parallel_edges_and_loops(two_vertex_graph):
    assert betti_number(two_vertex_graph) == 2


def test_betti_of_two_loops():
    assert betti_number(SemiGraph(["v"], {"a": ("v", "v"), "b": ("v", "v")})) == 2


def test_loop_edges(two_vertex_graph):
    assert loop_edges(two_vertex_graph) == {"e3"}
    assert loop_edges(SemiGraph(["a", "b"], {"e": ("a", "b")})) == set()


def test_tree_after_loops():
    g = SemiGraph(["a", "b"], {"e": ("a", "b"), "l": ("a", "a")})
    assert is_tree_after_loops(g)
    assert not is_tree_after_loops(SemiGraph(["a", "b"], {"e": ("a", "b"), "f": ("a", "b")}))


def test_minimal_paths():
    chain = SemiGraph(["v1", "v2", "v3"], {"a": ("v1", "v2"), "b": ("v2", "v3")})
    assert minimal_path(chain, "v1", "v1") == ["v1"]
    assert minimal_path(chain, "v1", "v2") == ["v1", "a", "v2"]
    assert len(minimal_path(chain, "v1", "v3")[1::2]) == 2


@pytest.mark.parametrize(
    "vertices, closed, message",
    [
        (["a", "a"], {}, "duplicate"),
        (["a"], {"e": ("a", "b")}, "unknown vertex"),
        (["a", "b"], {}, "not connected"),
    ],
)
def test_rejects_bad_graphs(vertices, closed, message):
    with pytest.raises(InputError, match=message):
        SemiGraph(vertices, closed)


def test_branch_name_clash_rejected():
    with pytest.raises(InputError, match="clash"):
        SemiGraph(["a"], {"e": ("a", "a")}, {"e.1": "a"})


def test_degree_counts_loops_twice(two_vertex_graph):
    assert two_vertex_graph.degree("v2") == 5
    assert two_vertex_graph.degree("v1") == 2


def test_genus_examples():
    assert total_genus(CurveModel(SemiGraph(["v"]), {"v": 2}, 3)) == 2
    theta = SemiGraph(["a", "b"], {"e1": ("a", "b"), "e2": ("a", "b"), "e3": ("a", "b")})
    assert total_genus(CurveModel(theta, {"a": 1, "b": 1}, 3)) == 4
    assert total_genus(CurveModel(SemiGraph(["v"], {"l": ("v", "v")}, {"x": "v"}), {"v": 0}, 2)) == 1


def test_p_rank_examples():
    loop = SemiGraph(["v"], {"l": ("v", "v")})
    assert total_p_rank(CurveModel(loop, {"v": 1}, 3, {"v": 0})) == 1
    pair = SemiGraph(["a", "b"], {"e1": ("a", "b"), "e2": ("a", "b")})
    assert total_p_rank(CurveModel(pair, {"a": 1, "b": 1}, 3, {"a": 0, "b": 1})) == 2
    tree = SemiGraph(["a", "b"], {"e": ("a", "b")})
    c = CurveModel(tree, {"a": 1, "b": 2}, 5)
    assert total_p_rank(c) == total_genus(c)


def test_stability_and_p_rank_guards():
    with pytest.raises(InputError, match="stability"):
        CurveModel(SemiGraph(["v"], {}, {"x": "v"}), {"v": 0}, 2)
    with pytest.raises(InputError, match="p-rank"):
        CurveModel(SemiGraph(["v"]), {"v": 2}, 3, {"v": 3})
    with pytest.raises(InputError, match="prime"):
        CurveModel(SemiGraph(["v"]), {"v": 2}, 4)


def test_curve_json_round_trip():
    from hwdegen.io import curve_from_json

    c = CurveModel(SemiGraph(["v"], {"l": ("v", "v")}), {"v": 0}, 2, require_stable=False)
    assert curve_from_json(c.to_json()) == c


@st.composite
def random_graphs(draw):
    k = draw(st.integers(1, 5))
    verts = [f"v{i}" for i in range(k)]
    closed = {f"t{i}": (verts[draw(st.integers(0, i - 1))], verts[i]) for i in range(1, k)}
    extra = draw(st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)), max_size=4))
    for j, (a, b) in enumerate(extra):
        closed[f"f{j}"] = (verts[a], verts[b])
    return SemiGraph(verts, closed), len(extra)


@given(random_graphs())
def test_betti_equals_number_of_extra_edges(data):
    g, extra = data
    assert betti_number(g) == extra
    assert betti_number(g.without_loops()) <= extra
