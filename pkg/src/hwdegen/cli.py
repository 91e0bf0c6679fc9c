"""Command-line front end: ``hwdegen <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
unusable input.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from typing import Sequence

from . import suites
from .anabelian import avr_p, invariants_of, recover_type
from .assembler import check_decomposition_theorem, search_max, search_max_over_t
from .curvebackend import (
    eigenspace_gamma_by_p_steps,
    frobenius_twist_invariance,
    gamma,
    gamma_bound_check,
    gamma_by_linear_power,
    theta_exists,
)
from .errors import BudgetExhausted, InputError, OracleMismatch
from .graphcover import (
    check_single_vertex_formula,
    check_topological_formula,
    check_two_vertex_formula,
    eigenspace_dims,
    is_connected_cover,
)
from .io import component_from_json, load_component, load_cover, load_curve, load_divisor, load_node_data
from .padic import DigitContext, cut_split, necessary_condition, s_of, shift_degrees_preserved
from .quasitree import minimal_quasi_tree
from .report import Report
from .semigraph import betti_number, loop_edges, total_genus, total_p_rank

log = logging.getLogger("hwdegen")


def _int_expr(text: str) -> int:
    """Integers written as ``12``, ``10^7`` or ``1e7``."""
    m = re.fullmatch(r"\s*(\d+)\s*\^\s*(\d+)\s*", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        value = float(text) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def _name_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


# commands -------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    report.inputs["curve"] = curve.to_json()
    g, n = curve.topological_type()
    report.results.update({"g": g, "n": n, "vertices": len(curve.graph.vertices), "stable": curve.require_stable})
    report.add("curve-well-formed", "semigraph.CurveModel", True)
    if args.divisor:
        D = load_divisor(args.divisor)
        report.inputs["divisor"] = D.to_json()
        same = set(D.coeffs) == set(curve.graph.open_edges)
        report.add("divisor-matches-marked-points", "padic.MarkedDivisor", same)
    if args.cover:
        spec = load_cover(args.cover, curve.graph)
        report.inputs["cover"] = spec.to_json()
        report.add("cover-well-formed", "graphcover.CoverSpec", True, connected=is_connected_cover(spec))


def cmd_invariants(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    report.inputs["curve"] = curve.to_json()
    g, n = curve.topological_type()
    r = betti_number(curve.graph)
    sigma = total_p_rank(curve)
    report.results.update(
        {
            "g": g,
            "n": n,
            "r": r,
            "sigma": sigma,
            "loops": sorted(loop_edges(curve.graph)),
            "component_genus_sum": sum(curve.vertex_genus.values()),
            "totally_degenerate": curve.is_totally_degenerate,
        }
    )
    if 2 * g - 2 + n > 0:
        report.results["anabelian"] = invariants_of(g, n).to_json()
    report.add("genus-is-components-plus-cycles", "semigraph.total_genus", g == total_genus(curve) and g >= r)
    report.add("p-rank-between-betti-and-genus", "semigraph.total_p_rank", r <= sigma <= g)


def cmd_quasi_tree(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    hint = _name_list(args.hint_e) if args.hint_e is not None else None
    report.inputs.update({"curve": curve.to_json(), "hint_e": hint})
    result = minimal_quasi_tree(curve, hint)
    report.results["quasi_tree"] = result.to_json()
    report.results["dot"] = result.to_dot()
    gamma_graph = result.gamma
    if curve.n_marked == 0:
        report.add("empty-without-marked-points", "quasitree.minimal_quasi_tree", not gamma_graph.vertices)
        return
    report.add(
        "tree-after-removing-loops",
        "quasitree.minimal_quasi_tree",
        betti_number(gamma_graph.without_loops()) == 0,
    )
    report.add(
        "marked-points-preserved",
        "quasitree.minimal_quasi_tree",
        set(curve.graph.open_edges) <= set(gamma_graph.open_edges),
    )
    again = minimal_quasi_tree(gamma_graph, [])
    report.add("idempotent", "quasitree.minimal_quasi_tree", again.gamma.to_json() == gamma_graph.to_json())


def cmd_cover(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    spec = load_cover(args.cover, curve.graph)
    report.inputs.update({"curve": curve.to_json(), "cover": spec.to_json()})
    dims = eigenspace_dims(spec)
    report.results.update({"dims": dims, "connected": is_connected_cover(spec), "etale_edges": spec.etale_edges})
    report.add("character-route-matches-direct-route", "graphcover.eigenspace_dims", True)
    formulas = [check_topological_formula(spec, dims)]
    base = spec.base
    if len(base.vertices) == 1:
        formulas.append(check_single_vertex_formula(spec, dims[1 % spec.n]))
    elif len(base.vertices) == 2 and not loop_edges(base):
        formulas.append(check_two_vertex_formula(spec, dims[1 % spec.n]))
    report.results["formulas"] = [f.to_json() for f in formulas]
    for f in formulas:
        if f.applies:
            report.add(f.claim, "graphcover." + f.claim, f.passed, expected=f.expected, observed=f.observed)


def cmd_divisor(args: argparse.Namespace, report: Report) -> None:
    D = load_divisor(args.divisor)
    report.inputs["divisor"] = D.to_json()
    n_X = len(D.coeffs)
    if args.curve:
        curve = load_curve(args.curve)
        if set(curve.graph.open_edges) != set(D.coeffs):
            raise InputError("the divisor must list exactly the marked points of the curve")
    report.results.update({"n": D.ctx.n, "degree": D.degree, "in_kernel": D.in_kernel})
    report.add("in-kernel", "padic.MarkedDivisor", D.in_kernel)
    if not D.in_kernel:
        return
    s = s_of(D, n_X)
    report.results["s"] = s
    report.results["shift_degrees_preserved"] = shift_degrees_preserved(D)
    if n_X >= 2 and s == n_X - 1:
        verdict = necessary_condition(D, n_X)
        report.results["digit_test"] = verdict.to_json()
        report.add(
            "digit-columns-iff-shift-invariant",
            "padic.necessary_condition",
            verdict.holds == shift_degrees_preserved(D),
        )
        if verdict.holds and n_X >= 3:
            split = cut_split(D, sorted(D.coeffs))
            report.results["cut_split"] = split.to_json()
            report.add("cut-split-identities", "padic.cut_split", split.passed)


def _component_from_args(args: argparse.Namespace):
    if args.component:
        return load_component(args.component)
    if args.p is None or args.t is None or args.exps is None:
        raise InputError("give --component FILE or all of --p, --t and --exps")
    data = {"p": args.p, "t": args.t, "exps": args.exps}
    if args.points is not None:
        data["points"] = _name_list(args.points)
    return component_from_json(data)


def cmd_gamma(args: argparse.Namespace, report: Report) -> None:
    c = _component_from_args(args)
    report.inputs["component"] = c.to_json()
    if c.s == 0:
        raise InputError("s(D) = 0: the character is trivial and no operator is defined")
    value = gamma(c)
    report.results.update({"s": c.s, "gamma": value, "theta_exists": theta_exists(c)})
    linear = gamma_by_linear_power(c)
    stepwise = eigenspace_gamma_by_p_steps(c)
    report.add("semilinear-rank-matches-linear-power", "curvebackend.gamma", value == linear, other=linear)
    report.add("semilinear-rank-matches-p-steps", "curvebackend.gamma", value == stepwise, other=stepwise)
    report.add("gamma-at-most-s-minus-one", "curvebackend.gamma_bound_check", gamma_bound_check(c))
    report.add(
        "digit-shift-invariance",
        "curvebackend.frobenius_twist_invariance",
        all(frobenius_twist_invariance(c, i) for i in range(c.ctx.t)),
    )


def cmd_assemble(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    D = load_divisor(args.divisor)
    data, comp = load_node_data(args.cover, curve, D)
    report.inputs.update({"curve": curve.to_json(), "data": data.to_json(), "component_gammas": comp})
    r = check_decomposition_theorem(data, comp)
    report.results["decomposition"] = r.to_json()
    report.results["total_gamma"] = r.global_gamma
    report.add("global-max-iff-components-max", "assembler.check_decomposition_theorem", r.agrees)
    report.add("global-at-most-target", "assembler.global_target", r.global_gamma <= r.global_target)


def cmd_search_max(args: argparse.Namespace, report: Report) -> None:
    curve = load_curve(args.curve)
    p = args.p if args.p is not None else curve.p
    if p != curve.p:
        raise InputError(f"--p {p} differs from the curve's characteristic {curve.p}")
    report.inputs.update({"curve": curve.to_json(), "t": args.t, "t_max": args.t_max, "budget": args.budget})

    def progress(explored: int, best: int | None) -> None:
        log.info("explored %d candidates, best so far %s", explored, best)

    if args.t is not None:
        result = search_max(curve, DigitContext(p, args.t), args.budget, progress=progress)
    else:
        result = search_max_over_t(curve, p, args.t_max or 6, args.budget, progress=progress)
    report.results["search"] = result.to_json()
    report.add("no-bound-violations", "assembler.global_target", not result.violations)
    report.add(
        "witness-attains-gamma-max",
        "assembler.search_max",
        result.attained,
        lower_bound_only=result.lower_bound_only,
    )


def cmd_anabelian(args: argparse.Namespace, report: Report) -> None:
    if args.g is not None or args.n is not None:
        if args.g is None or args.n is None:
            raise InputError("give both --g and --n")
        report.inputs.update({"g": args.g, "n": args.n})
        inv = invariants_of(args.g, args.n)
        report.results["invariants"] = inv.to_json()
        report.results["avr_p"] = avr_p(args.g, args.n)
        back = recover_type(inv.b1, inv.b2, inv.gamma_max)
        report.add("type-recovered-from-invariants", "anabelian.recover_type", back == (args.g, args.n))
        return
    if args.b1 is None or args.b2 is None or args.gamma_max is None:
        raise InputError("give --g and --n, or all of --b1, --b2 and --gamma-max")
    report.inputs.update({"b1": args.b1, "b2": args.b2, "gamma_max": args.gamma_max})
    g, n = recover_type(args.b1, args.b2, args.gamma_max)
    report.results.update({"g": g, "n": n})
    inv = invariants_of(g, n)
    report.add(
        "invariants-recomputed-from-type",
        "anabelian.invariants_of",
        (inv.b1, inv.b2, inv.gamma_max) == (args.b1, args.b2, args.gamma_max),
    )


def cmd_verify_suite(args: argparse.Namespace, report: Report) -> None:
    name = args.suite
    kwargs: dict = {}
    if name == "graph-formulas":
        if args.max_n is not None:
            kwargs["ns"] = tuple(range(2, args.max_n + 1))
        if args.max_vertices is not None:
            kwargs["max_vertices"] = args.max_vertices
        if args.max_edges is not None:
            kwargs["max_edges"] = args.max_edges
    elif name == "block-action" and args.max_n is not None:
        kwargs["max_product"] = args.max_n
    elif name in ("digit-columns", "cut-identities") and args.t_max is not None:
        kwargs["t_max"] = args.t_max
    elif name == "decomposition":
        if args.t_max is not None:
            kwargs["ts"] = tuple(range(2, args.t_max + 1))
        if args.max_vertices is not None:
            kwargs["max_vertices"] = args.max_vertices
    elif name == "witnesses":
        if args.t_max is not None:
            kwargs["t_max"] = args.t_max
        if args.budget is not None:
            kwargs["budget"] = args.budget
    elif name in ("divisors", "quasi-tree"):
        kwargs["seed"] = args.seed
        if args.count is not None:
            kwargs["count"] = args.count
    report.inputs.update({"suite": name, **{k: list(v) if isinstance(v, tuple) else v for k, v in kwargs.items()}})
    suites.run_suite(name, report, **kwargs)


# parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="hwdegen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check input files")
    p.add_argument("--curve", required=True)
    p.add_argument("--divisor")
    p.add_argument("--cover")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="type, Betti number and p-rank of a curve")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("quasi-tree", parents=[common], help="minimal quasi-tree and its image")
    p.add_argument("--curve", required=True)
    p.add_argument("--hint-e", help="comma-separated nodes to cut")
    p.set_defaults(func=cmd_quasi_tree)

    p = sub.add_parser("cover", parents=[common], help="eigenspace dimensions of a graph cover")
    p.add_argument("action", nargs="?", choices=["gamma"], default="gamma")
    p.add_argument("--curve", required=True)
    p.add_argument("--cover", required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("divisor", parents=[common], help="digit tests on a ramification divisor")
    p.add_argument("action", nargs="?", choices=["check"], default="check")
    p.add_argument("--divisor", required=True)
    p.add_argument("--curve")
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("gamma", parents=[common], help="invariant of a cyclic cover of the projective line")
    p.add_argument("--component", help="component JSON file")
    p.add_argument("--p", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--exps", type=_int_list, help="comma-separated exponents")
    p.add_argument("--points", help="comma-separated points such as 0,1,inf,g^2")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("assemble", parents=[common], help="total invariant of admissible cover data")
    p.add_argument("--curve", required=True)
    p.add_argument("--divisor", required=True)
    p.add_argument("--cover", required=True, help="node exponents, voltages and optional component invariants")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("search-max", parents=[common], help="search for a character of maximal invariant")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--t", type=int)
    group.add_argument("--t-max", type=int, help="try t = 1, ..., T (default 6)")
    p.add_argument("--budget", type=_int_expr)
    p.set_defaults(func=cmd_search_max)

    p = sub.add_parser("anabelian", parents=[common], help="group invariants and type recovery")
    p.add_argument("--g", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--b1", type=int)
    p.add_argument("--b2", type=int)
    p.add_argument("--gamma-max", type=int)
    p.set_defaults(func=cmd_anabelian)

    p = sub.add_parser("verify-suite", parents=[common], help="run a bundled verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--t-max", type=int)
    p.add_argument("--budget", type=_int_expr)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    report = Report(args.command)
    try:
        args.func(args, report)
    except InputError as exc:
        print(f"hwdegen: error: {exc}", file=sys.stderr)
        return 2
    except (OracleMismatch, BudgetExhausted) as exc:
        report.add("internal-cross-check", type(exc).__name__, False, error=str(exc))
    print(report.dumps() if args.json else report.render_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
