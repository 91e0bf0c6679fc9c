import json
from pathlib import Path

import pytest

from hwdegen.cli import main
from hwdegen.errors import InputError
from hwdegen.io import curve_from_json, load_component, load_curve, read_json

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_curve_round_trip():
    curve = load_curve(DATA / "curve_two_components.json")
    assert curve_from_json(curve.to_json()).to_json() == curve.to_json()


def test_malformed_json_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 3,\n  "vertices": [}\n')
    with pytest.raises(InputError, match="line 2, column"):
        read_json(bad)


def test_schema_errors_name_the_field(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 3, "vertices": [{"id": "v", "genus": -1}]}))
    with pytest.raises(InputError, match="vertices/0/genus"):
        load_curve(bad)


def test_component_file():
    c = load_component(DATA / "component_lambda.json")
    assert c.field.q == 9
    assert c.s == 2


def test_invariants_of_two_component_curve(capsys):
    code, report = run_json(capsys, "invariants", "--curve", str(DATA / "curve_two_components.json"))
    assert code == 0
    assert report["results"]["g"] == 2
    assert report["results"]["sigma"] == 1
    assert report["results"]["anabelian"] == {"g": 2, "n": 1, "b1": 4, "b2": 0, "gamma_max": 1}


def test_malformed_input_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["invariants", "--curve", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_unknown_command_exits_two(capsys):
    assert main(["frobnicate"]) == 2


def test_quasi_tree_command(capsys):
    code, report = run_json(capsys, "quasi-tree", "--curve", str(DATA / "curve_quasi_tree.json"), "--hint-e", "a1")
    assert code == 0
    assert report["results"]["quasi_tree"]["selected_E"] == ["a1"]


def test_quasi_tree_text_includes_dot(capsys):
    code, out = run(capsys, "quasi-tree", "--curve", str(DATA / "curve_quasi_tree.json"), "--hint-e", "a1")
    assert code == 0
    assert 'graph "quasi_tree"' in out


def test_cover_gamma(capsys):
    code, report = run_json(
        capsys, "cover", "gamma", "--curve", str(DATA / "curve_0_4.json"), "--cover", str(DATA / "cover_0_4.json")
    )
    assert code == 0
    assert report["passed"]


def test_divisor_check(capsys):
    code, report = run_json(
        capsys, "divisor", "check", "--divisor", str(DATA / "divisor_0_4.json"), "--curve", str(DATA / "curve_0_4.json")
    )
    assert code == 0
    assert report["passed"]


def test_gamma_from_flags(capsys):
    code, report = run_json(capsys, "gamma", "--p", "5", "--t", "1", "--exps", "3,3,2", "--points", "0,1,inf")
    assert code == 0
    assert report["results"]["gamma"] == 1


def test_gamma_from_component_file(capsys):
    code, report = run_json(capsys, "gamma", "--component", str(DATA / "component_lambda.json"))
    assert code == 0
    assert report["results"]["gamma"] == 1


def test_assemble(capsys):
    code, report = run_json(
        capsys,
        "assemble",
        "--curve",
        str(DATA / "curve_0_4.json"),
        "--divisor",
        str(DATA / "divisor_0_4.json"),
        "--cover",
        str(DATA / "node_data_0_4.json"),
    )
    assert code == 0
    assert report["results"]["total_gamma"] == 2


def test_search_max_reports_failure_with_exit_one(capsys):
    code, report = run_json(capsys, "search-max", "--curve", str(DATA / "curve_0_4.json"), "--p", "2", "--t", "3")
    assert code == 1
    assert not report["passed"]


def test_anabelian_both_directions(capsys):
    code, report = run_json(capsys, "anabelian", "--g", "2", "--n", "3")
    assert code == 0
    assert report["results"]["invariants"]["b1"] == 6
    code, report = run_json(capsys, "anabelian", "--b1", "4", "--b2", "1", "--gamma-max", "1")
    assert code == 0
    assert (report["results"]["g"], report["results"]["n"]) == (2, 0)


@pytest.mark.parametrize("suite", ["anabelian", "quasi-tree", "hasse-lambda", "block-action"])
def test_small_verify_suites(capsys, suite):
    assert main(["verify-suite", suite, "--count", "20"]) == 0


def test_graph_formula_suite_small(capsys):
    code, report = run_json(capsys, "verify-suite", "graph-formulas", "--max-n", "4", "--max-vertices", "2", "--max-edges", "2")
    assert code == 0
    assert report["passed"]


def test_json_output_is_deterministic(capsys):
    args = ["quasi-tree", "--curve", str(DATA / "curve_quasi_tree.json"), "--json"]
    first = run(capsys, *args)[1]
    second = run(capsys, *args)[1]
    assert first == second
