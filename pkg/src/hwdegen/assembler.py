"""Global invariants of cyclic admissible covers of totally degenerate curves.

An admissible cover is described by a ramification exponent at every branch
(marked points, and both branches ``"<e>.1"``, ``"<e>.2"`` of every node) plus
a voltage on every node. Exponents at the two branches of a node add up to 0
modulo n and the exponents on each component add up to 0 modulo n. The
component character on a genus-0 component is read off from its exponents;
the decomposition groups of vertices and nodes and the voltages define the
induced cover of the dual graph. The global invariant is the sum of the
component invariants and the dimension of the first eigenspace of the graph.

This module also builds the interleaved divisor families that glue
component-wise maximal covers along a minimal quasi-tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .curvebackend import gamma_of_exponents
from .errors import InputError, OracleMismatch
from .graphcover import CoverSpec, eigenspace_dims, eigenspace_dims_character
from .padic import DigitContext, MarkedDivisor, shift_degrees_preserved
from .quasitree import QuasiTreeResult, minimal_quasi_tree, select_E
from .semigraph import (
    CurveModel,
    SemiGraph,
    betti_number,
    loop_edges,
    minimal_path,
    total_genus,
)

__all__ = [
    "AdmissibleCoverData",
    "component_target",
    "global_target",
    "gamma_max_bound",
    "total_gamma",
    "DecompositionReport",
    "check_decomposition_theorem",
    "enumerate_admissible",
    "SearchResult",
    "search_max",
    "search_max_over_t",
    "QuasiTreeDivisors",
    "build_quasi_tree_divisors",
    "ThreePointDivisors",
    "build_three_point_divisors",
    "theta_constant",
    "curve_models",
    "degenerate_model",
    "degenerate_curves",
    "classify_three_points",
]


def theta_constant(g: int) -> int:
    """C(g) = 3^(g-1) g! for g >= 1 and 0 for g = 0."""
    if g < 0:
        raise InputError("genus must be non-negative")
    return 0 if g == 0 else 3 ** (g - 1) * factorial(g)


def _gcd_all(n: int, values: Iterable[int]) -> int:
    out = n
    for x in values:
        out = gcd(out, x)
    return out


# cover data --------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleCoverData:
    curve: CurveModel
    ctx: DigitContext
    branch_exps: Mapping[str, int]
    voltage: Mapping[str, int]

    def __init__(
        self,
        curve: CurveModel,
        ctx: DigitContext,
        branch_exps: Mapping[str, int],
        voltage: Mapping[str, int] | None = None,
    ) -> None:
        if curve.p != ctx.p:
            raise InputError("the curve and the digit context disagree on p")
        g, n = curve.graph, ctx.n
        names = set(g.open_edges) | {f"{e}.{k}" for e in g.closed_edges for k in (1, 2)}
        unknown = sorted(set(branch_exps) - names)
        if unknown:
            raise InputError(f"exponents given for unknown branches {unknown}")
        exps = {b: int(branch_exps.get(b, 0)) for b in sorted(names)}
        for b, d in exps.items():
            if not 0 <= d < n:
                raise InputError(f"exponent {d} at {b!r} is outside [0, {n - 1}]")
        for e in g.closed_edges:
            if (exps[f"{e}.1"] + exps[f"{e}.2"]) % n:
                raise InputError(f"branch exponents at node {e!r} do not add up to 0 mod {n}")
        for v in g.sorted_vertices():
            if sum(exps[b] for b in g.branches_at(v)) % n:
                raise InputError(f"exponents on component {v!r} do not add up to 0 mod {n}")
        volt = {e: int((voltage or {}).get(e, 0)) % n for e in sorted(g.closed_edges)}
        bad = sorted(set(voltage or {}) - set(g.closed_edges))
        if bad:
            raise InputError(f"voltages given for unknown nodes {bad}")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "branch_exps", exps)
        object.__setattr__(self, "voltage", volt)

    @property
    def divisor(self) -> MarkedDivisor:
        return MarkedDivisor(self.ctx, {x: self.branch_exps[x] for x in self.curve.graph.open_edges})

    def component_exps(self, v: str) -> tuple[int, ...]:
        return tuple(self.branch_exps[b] for b in self.curve.graph.branches_at(v))

    def is_trivial(self) -> bool:
        return not any(self.branch_exps.values()) and not any(self.voltage.values())

    @property
    def cover_spec(self) -> CoverSpec:
        g, n = self.curve.graph, self.ctx.n
        vertex_stab = {v: n // _gcd_all(n, self.component_exps(v)) for v in g.vertices}
        edge_stab = {e: n // gcd(n, self.branch_exps[f"{e}.1"]) for e in g.closed_edges}
        return CoverSpec(g, n, vertex_stab, edge_stab, self.voltage)

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "t": self.ctx.t,
            "branch_exps": dict(self.branch_exps),
            "voltage": dict(self.voltage),
        }


def component_target(exps: Sequence[int], n: int, genus: int = 0) -> int:
    """Maximal value a component invariant can take for its character."""
    if not any(exps):
        return genus
    s = sum(exps) // n
    return genus - 1 if s == 0 else genus + s - 1


def global_target(data: AdmissibleCoverData) -> int:
    D = data.divisor
    gX = total_genus(data.curve)
    return gX - 1 if not D.support else gX + D.degree // data.ctx.n - 1


def gamma_max_bound(curve: CurveModel) -> int:
    gX, nX = total_genus(curve), curve.n_marked
    return gX - 1 if nX == 0 else gX + nX - 2


def _component_gammas(data: AdmissibleCoverData, given: Mapping[str, int] | None) -> dict[str, int]:
    out = {}
    for v in data.curve.graph.sorted_vertices():
        if given is not None and v in given:
            out[v] = int(given[v])
        elif data.curve.vertex_genus[v] == 0:
            out[v] = gamma_of_exponents(data.ctx, data.component_exps(v))
        else:
            raise InputError(f"no invariant supplied for the positive-genus component {v!r}")
    return out


def total_gamma(
    data: AdmissibleCoverData,
    component_gammas: Mapping[str, int] | None = None,
    *,
    checked: bool = True,
) -> int:
    """Sum of component invariants plus dim M(1) of the induced graph cover."""
    comps = _component_gammas(data, component_gammas)
    spec = data.cover_spec
    dims = eigenspace_dims(spec) if checked else eigenspace_dims_character(spec)
    return sum(comps.values()) + dims[1 % spec.n]


@dataclass(frozen=True)
class DecompositionReport:
    global_gamma: int
    global_target: int
    component_gammas: Mapping[str, int]
    component_targets: Mapping[str, int]
    graph_term: int

    @property
    def global_attained(self) -> bool:
        return self.global_gamma == self.global_target

    @property
    def components_attained(self) -> bool:
        return all(self.component_gammas[v] == self.component_targets[v] for v in self.component_gammas)

    @property
    def agrees(self) -> bool:
        return self.global_attained == self.components_attained

    def to_json(self) -> dict:
        return {
            "global_gamma": self.global_gamma,
            "global_target": self.global_target,
            "global_attained": self.global_attained,
            "component_gammas": dict(self.component_gammas),
            "component_targets": dict(self.component_targets),
            "components_attained": self.components_attained,
            "graph_term": self.graph_term,
            "agrees": self.agrees,
        }


def check_decomposition_theorem(
    data: AdmissibleCoverData,
    component_gammas: Mapping[str, int] | None = None,
    *,
    checked: bool = True,
) -> DecompositionReport:
    """Compare global maximality with component-wise maximality."""
    if any(data.curve.vertex_genus.values()) and component_gammas is None:
        raise InputError("positive-genus components need externally supplied invariants")
    comps = _component_gammas(data, component_gammas)
    spec = data.cover_spec
    dims = eigenspace_dims(spec) if checked else eigenspace_dims_character(spec)
    graph_term = dims[1 % spec.n]
    targets = {
        v: component_target(data.component_exps(v), data.ctx.n, data.curve.vertex_genus[v])
        for v in comps
    }
    return DecompositionReport(
        global_gamma=sum(comps.values()) + graph_term,
        global_target=global_target(data),
        component_gammas=comps,
        component_targets=targets,
        graph_term=graph_term,
    )


# enumeration ---------------------------------------------------------------------


def _kernel_vectors(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for head in itertools.product(range(n), repeat=k - 1):
        yield head + ((-sum(head)) % n,)


def _divisor_order(ctx: DigitContext, points: Sequence[str]) -> list[tuple[int, ...]]:
    """Divisors by (s descending, digit condition first, lexicographic)."""
    n, nX = ctx.n, len(points)

    def key(vec: tuple[int, ...]) -> tuple:
        s = sum(vec) // n
        passes = True
        if nX and s == nX - 1:
            passes = shift_degrees_preserved(MarkedDivisor(ctx, dict(zip(points, vec))))
        return (-s, not passes, vec)

    return sorted(_kernel_vectors(n, nX), key=key)


@dataclass(frozen=True)
class _Layout:
    graph: SemiGraph
    points: tuple[str, ...]
    tree: tuple[str, ...]
    free: tuple[str, ...]
    peel: tuple[tuple[str, str], ...]


def _layout(graph: SemiGraph) -> _Layout:
    """Spanning tree, free nodes, and a leaf-peeling order for tree nodes."""
    free = sorted(select_E(graph) | loop_edges(graph))
    tree = sorted(set(graph.closed_edges) - set(free))
    remaining = set(tree)
    alive = set(graph.vertices)
    peel = []
    while remaining:
        for v in sorted(alive):
            incident = [e for e in remaining if v in graph.closed_edges[e]]
            if len(incident) == 1:
                peel.append((v, incident[0]))
                remaining.discard(incident[0])
                alive.discard(v)
                break
        else:  # pragma: no cover - a forest always has a leaf
            raise InputError("tree peeling failed")
    return _Layout(graph, tuple(sorted(graph.open_edges)), tuple(tree), tuple(free), tuple(peel))


def _branch(e: str, graph: SemiGraph, v: str) -> str:
    a, _ = graph.closed_edges[e]
    return f"{e}.1" if a == v else f"{e}.2"


def _solve_tree(layout: _Layout, exps: dict[str, int], n: int) -> None:
    g = layout.graph
    for v, e in layout.peel:
        here = _branch(e, g, v)
        other = f"{e}.2" if here.endswith(".1") else f"{e}.1"
        # every other branch at v is already fixed
        rest = sum(exps[b] for b in g.branches_at(v) if b != here)
        exps[here] = (-rest) % n
        exps[other] = (-exps[here]) % n


def enumerate_admissible(
    curve: CurveModel,
    ctx: DigitContext,
    *,
    divisors: Iterable[Sequence[int]] | None = None,
) -> Iterator[AdmissibleCoverData]:
    """Every non-trivial admissible cover datum, voltages fixed to 0 on a tree.

    Off the tree a voltage matters only modulo the subgroup generated by the
    two end stabilizers; one representative per class is produced.
    """
    g, n = curve.graph, ctx.n
    layout = _layout(g)
    order = divisors if divisors is not None else _divisor_order(ctx, layout.points)
    for vec in order:
        base = dict(zip(layout.points, vec))
        for free_exps in itertools.product(range(n), repeat=len(layout.free)):
            exps = dict(base)
            for e, x in zip(layout.free, free_exps):
                exps[f"{e}.1"] = x
                exps[f"{e}.2"] = (-x) % n
            for e in layout.tree:
                exps[f"{e}.1"] = exps[f"{e}.2"] = 0
            _solve_tree(layout, exps, n)
            stab = {v: n // _gcd_all(n, (exps[b] for b in g.branches_at(v))) for v in g.vertices}
            ranges = []
            for e in layout.free:
                a, b = g.closed_edges[e]
                la, lb = stab[a], stab[b]
                ranges.append(range(n // (la * lb // gcd(la, lb))))
            for volts in itertools.product(*ranges):
                if not any(exps.values()) and not any(volts):
                    continue
                yield AdmissibleCoverData(curve, ctx, exps, dict(zip(layout.free, volts)))


@dataclass
class SearchResult:
    gamma: int | None
    bound: int
    witness: AdmissibleCoverData | None
    explored: int
    complete: bool
    t: int
    violations: list = field(default_factory=list)

    @property
    def attained(self) -> bool:
        return self.gamma is not None and self.gamma == self.bound

    @property
    def lower_bound_only(self) -> bool:
        return not self.complete and not self.attained

    def to_json(self) -> dict:
        return {
            "p": self.witness.ctx.p if self.witness else None,
            "t": self.t,
            "gamma": self.gamma,
            "gamma_max": self.bound,
            "attained": self.attained,
            "explored": self.explored,
            "complete": self.complete,
            "lower_bound_only": self.lower_bound_only,
            "witness": self.witness.to_json() if self.witness else None,
            "bound_violations": self.violations[:10],
        }


def search_max(
    curve: CurveModel,
    ctx: DigitContext,
    budget: int | None = None,
    *,
    stop_at_bound: bool = True,
    progress: Callable[[int, int | None], None] | None = None,
    progress_every: int = 10_000,
) -> SearchResult:
    """Largest global invariant over admissible data, with a witness.

    Candidates are visited by (s(D) descending, digit condition first, D,
    free node exponents, voltages) and the first candidate with the largest
    value wins. The search stops once the theoretical maximum is reached.
    """
    if any(curve.vertex_genus.values()):
        raise InputError("search needs every component to have genus 0")
    bound = gamma_max_bound(curve)
    best: int | None = None
    witness = None
    explored = 0
    complete = True
    violations = []
    for data in enumerate_admissible(curve, ctx):
        if budget is not None and explored >= budget:
            complete = False
            break
        explored += 1
        if progress is not None and explored % progress_every == 0:
            progress(explored, best)
        value = total_gamma(data, checked=False)
        cap = global_target(data)
        if value > cap:
            violations.append({"witness": data.to_json(), "gamma": value, "cap": cap})
        if best is None or value > best:
            best, witness = value, data
            if stop_at_bound and value >= bound:
                break
    return SearchResult(best, bound, witness, explored, complete, ctx.t, violations)


def search_max_over_t(
    curve: CurveModel,
    p: int,
    t_max: int,
    budget: int | None = None,
    t_min: int = 1,
    progress: Callable[[int, int | None], None] | None = None,
) -> SearchResult:
    """Try t = t_min, ..., t_max and return the first attaining search, else the best."""
    best = None
    for t in range(t_min, t_max + 1):
        ctx = DigitContext(p, t)
        if ctx.n == 1:
            continue
        result = search_max(curve, ctx, budget, progress=progress)
        if result.attained:
            return result
        if best is None or (result.gamma is not None and (best.gamma is None or result.gamma > best.gamma)):
            best = result
    if best is None:
        raise InputError("no t in range gives a non-trivial cyclic group")
    return best


# curve models ---------------------------------------------------------------------


def degenerate_model(
    vertices: Sequence[str],
    closed: Mapping[str, tuple[str, str]],
    marked: Mapping[str, str],
    p: int,
    *,
    require_stable: bool = True,
) -> CurveModel:
    """Totally degenerate curve: every component has genus 0."""
    graph = SemiGraph(vertices, closed, marked)
    return CurveModel(graph, {v: 0 for v in vertices}, p, require_stable=require_stable)


def curve_models(g: int, n_marked: int, p: int) -> CurveModel:
    """Small totally degenerate models used as search targets."""
    table = {
        (0, 3): (["v1"], {}, {"x1": "v1", "x2": "v1", "x3": "v1"}),
        (0, 4): (["v1", "v2"], {"e1": ("v1", "v2")}, {"x1": "v1", "x2": "v1", "x3": "v2", "x4": "v2"}),
        (1, 1): (["v1"], {"l1": ("v1", "v1")}, {"x1": "v1"}),
        (1, 2): (["v1", "v2"], {"l1": ("v1", "v1"), "e1": ("v1", "v2")}, {"x1": "v2", "x2": "v2"}),
        (2, 0): (["v1", "v2"], {"e1": ("v1", "v2"), "e2": ("v1", "v2"), "e3": ("v1", "v2")}, {}),
        (1, 0): (["v1"], {"l1": ("v1", "v1")}, {}),
    }
    if (g, n_marked) not in table:
        raise InputError(f"no built-in model of type ({g}, {n_marked})")
    vertices, closed, marked = table[(g, n_marked)]
    return degenerate_model(vertices, closed, marked, p, require_stable=(g, n_marked) != (1, 0))


# divisor families along a minimal quasi-tree ------------------------------------------


def _node_branch(graph: SemiGraph, e: str, v: str) -> str:
    return _branch(e, graph, v)


def _toward(graph: SemiGraph, start: str, target: str) -> str:
    """The node at ``start`` on the minimal path to ``target``."""
    path = minimal_path(graph, start, target)
    return path[1]


def _component_supports(qt_graph: SemiGraph, marked: Sequence[str]) -> dict[str, list[str]]:
    """D_u: marked points at u and the branches at u of non-loop nodes."""
    loops = loop_edges(qt_graph)
    out = {}
    for u in qt_graph.sorted_vertices():
        pts = [x for x in qt_graph.open_at(u) if x in marked]
        nodes = [
            _node_branch(qt_graph, e, u) for e in sorted(qt_graph.closed_at(u)) if e not in loops
        ]
        out[u] = sorted(pts) + nodes
    return out


@dataclass(frozen=True)
class QuasiTreeDivisors:
    ctx: DigitContext
    block_ctx: DigitContext
    families: tuple[tuple, ...]
    global_blocks: tuple[Mapping[str, int], ...]
    component_blocks: Mapping[str, tuple[Mapping[str, int], ...]]
    global_divisor: MarkedDivisor
    component_divisors: Mapping[str, MarkedDivisor]
    graph: SemiGraph
    marked: tuple[str, ...]

    def checks(self) -> dict[str, bool]:
        n, nX = self.ctx.n, len(self.marked)
        P = self.global_divisor
        g = self.graph
        out = {
            "kernel": P.in_kernel and all(D.in_kernel for D in self.component_divisors.values()),
            "global_degree": P.degree == (nX - 1) * n,
            "component_degrees": all(
                D.degree == (len(D.coeffs) - 1) * n for D in self.component_divisors.values()
            ),
            "shift_invariance": shift_degrees_preserved(P)
            and all(shift_degrees_preserved(D) for D in self.component_divisors.values()),
            "full_support": bool(P.coeffs) and all(c > 0 for c in P.coeffs.values()),
        }
        node_ok = True
        for e, (a, b) in g.closed_edges.items():
            if a == b:
                continue
            ca = self.component_divisors[a].coeffs[f"{e}.1"]
            cb = self.component_divisors[b].coeffs[f"{e}.2"]
            node_ok &= ca + cb == n and 0 < ca < n
        out["node_sums"] = node_ok
        restrict_ok = True
        for u, D in self.component_divisors.items():
            for x, c in D.coeffs.items():
                if x in self.marked:
                    restrict_ok &= P.coeffs[x] == c
                else:
                    far = _far_marked(g, u, x, self.marked)
                    restrict_ok &= c % n == sum(P.coeffs[y] for y in far) % n
        out["restriction"] = restrict_ok
        return out

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "t": self.ctx.t,
            "n": self.ctx.n,
            "t0": self.block_ctx.t,
            "d": len(self.families),
            "families": [list(f) for f in self.families],
            "global": dict(self.global_divisor.coeffs),
            "components": {u: dict(D.coeffs) for u, D in self.component_divisors.items()},
            "checks": self.checks(),
        }


def _far_marked(g: SemiGraph, u: str, branch: str, marked: Sequence[str]) -> list[str]:
    """Marked points on the far side of the node ``branch`` seen from ``u``."""
    e = branch.rsplit(".", 1)[0]
    a, b = g.closed_edges[e]
    other = b if a == u else a
    loops = loop_edges(g)
    seen = {u, other}
    stack = [other]
    side = {other}
    while stack:
        v = stack.pop()
        for f, w in g.neighbors(v):
            if f == e or f in loops or w in seen:
                continue
            seen.add(w)
            side.add(w)
            stack.append(w)
    return sorted(x for x in marked if g.open_edges[x] in side)


def build_quasi_tree_divisors(
    curve: CurveModel,
    qt: QuasiTreeResult | None = None,
    t0: int = 1,
    *,
    share: int = 1,
    families: str = "all",
    enforce_threshold: bool = True,
) -> QuasiTreeDivisors:
    """Interleaved marked-point and node divisor families along a quasi-tree.

    ``families="all"`` builds every marked-point family and every node family
    of every vertex. ``families="chain"`` keeps the marked-point families and,
    for consecutive vertices carrying marked points, one node family linking
    the last point of the first to the first point of the next; this is the
    smallest choice that still reaches every marked point.
    """
    qt = qt if qt is not None else minimal_quasi_tree(curve)
    marked = tuple(sorted(curve.graph.open_edges))
    nX = len(marked)
    if nX < 2:
        raise InputError("the construction needs at least two marked points")
    g = qt.gamma
    if betti_number(g.without_loops()) != 0:
        raise InputError("the quasi-tree minus its loops must be a tree")
    p = curve.p
    block = DigitContext(p, t0)
    n0 = block.n
    threshold = max(theta_constant(total_genus(curve)) + 1, len(curve.graph.closed_edges) + nX)
    if enforce_threshold and n0 <= threshold:
        raise InputError(f"n0 = {n0} must exceed {threshold}")
    if not 0 < share < n0:
        raise InputError(f"share must lie in (0, {n0})")
    supports = _component_supports(g, marked)
    pts_at = {u: [x for x in supports[u] if x in marked] for u in supports}
    vertices = g.sorted_vertices()

    def node_at(u: str, toward: str) -> str:
        e = _toward(g, u, toward)
        return _node_branch(g, e, u)

    def mp_family(v: str, i: int) -> dict[str, dict[str, int]]:
        xs = pts_at[v]
        out = {}
        for u in vertices:
            if u == v:
                q = {x: n0 for x in supports[u]}
                q[xs[i]] = share
                q[xs[i + 1]] = n0 - share
            else:
                q = {x: n0 for x in supports[u]}
                q[node_at(u, v)] = 0
            out[u] = q
        return out

    def nd_family(v: str, z: str) -> dict[str, dict[str, int]]:
        wz = g.open_edges[z]
        path = minimal_path(g, v, wz)
        on_path = path[0::2]
        out = {}
        for u in vertices:
            q = {x: n0 for x in supports[u]}
            if u == v:
                q[pts_at[v][-1]] = share
                q[node_at(u, wz)] = n0 - share
            elif u == wz:
                q[node_at(u, v)] = share
                q[z] = n0 - share
            elif u in on_path:
                q[node_at(u, v)] = share
                q[node_at(u, wz)] = n0 - share
            else:
                q[node_at(u, v)] = 0
            out[u] = q
        return out

    fams: list[tuple] = []
    for v in vertices:
        for i in range(len(pts_at[v]) - 1):
            fams.append(("mp", v, i + 1))
    if families == "all":
        for v in vertices:
            if pts_at[v]:
                for z in marked:
                    if z not in pts_at[v]:
                        fams.append(("nd", v, z))
    elif families == "chain":
        carriers = [v for v in vertices if pts_at[v]]
        for v, w in zip(carriers, carriers[1:]):
            fams.append(("nd", v, pts_at[w][0]))
    else:
        raise InputError(f"unknown family choice {families!r}")
    fams.sort(key=lambda f: (f[0], f[1], str(f[2])))

    comp_blocks: dict[str, list[dict[str, int]]] = {u: [] for u in vertices}
    global_blocks = []
    for kind, v, idx in fams:
        fam = mp_family(v, idx - 1) if kind == "mp" else nd_family(v, idx)
        for u in vertices:
            comp_blocks[u].append(fam[u])
        glob = {}
        for x in marked:
            glob[x] = fam[g.open_edges[x]][x]
        global_blocks.append(glob)
    d = len(fams)
    ctx = DigitContext(p, d * t0)
    n = ctx.n

    def combine(blocks: Sequence[Mapping[str, int]]) -> dict[str, int]:
        out = {x: 0 for x in blocks[0]}
        for j, b in enumerate(blocks):
            for x, c in b.items():
                out[x] += p ** (j * t0) * c
        return out

    P = combine(global_blocks)
    comps = {u: combine(comp_blocks[u]) for u in vertices}
    for label, coeffs in [("global", P)] + [(u, c) for u, c in comps.items()]:
        if any(c >= n for c in coeffs.values()):
            raise InputError(f"interleaved {label} divisor reaches n = {n}")
    return QuasiTreeDivisors(
        ctx=ctx,
        block_ctx=block,
        families=tuple(fams),
        global_blocks=tuple(global_blocks),
        component_blocks={u: tuple(b) for u, b in comp_blocks.items()},
        global_divisor=MarkedDivisor(ctx, P),
        component_divisors={u: MarkedDivisor(ctx, c) for u, c in comps.items()},
        graph=g,
        marked=marked,
    )


# three marked points ---------------------------------------------------------------


@dataclass(frozen=True)
class ThreePointDivisors:
    case: str
    ctx: DigitContext
    global_divisor: MarkedDivisor
    component_blocks: Mapping[str, tuple[Mapping[str, int], ...]]
    component_divisors: Mapping[str, MarkedDivisor]
    graph: SemiGraph
    marked: tuple[str, ...]

    def checks(self) -> dict[str, bool]:
        n = self.ctx.n
        P = self.global_divisor
        g = self.graph
        out = {
            "kernel": P.in_kernel and all(D.in_kernel for D in self.component_divisors.values()),
            "global_degree": P.degree == 2 * n,
            "component_degrees": all(
                D.degree == (len(D.coeffs) - 1) * n for D in self.component_divisors.values()
            ),
            "shift_invariance": shift_degrees_preserved(P)
            and all(shift_degrees_preserved(D) for D in self.component_divisors.values()),
        }
        node_ok = True
        for e, (a, b) in g.closed_edges.items():
            if a == b:
                continue
            ca = self.component_divisors[a].coeffs[f"{e}.1"]
            cb = self.component_divisors[b].coeffs[f"{e}.2"]
            node_ok &= (ca + cb) % n == 0
        out["node_sums"] = node_ok
        restrict_ok = True
        for u, D in self.component_divisors.items():
            for x, c in D.coeffs.items():
                if x in self.marked:
                    restrict_ok &= P.coeffs[x] == c
        out["restriction"] = restrict_ok
        return out

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "p": self.ctx.p,
            "t": self.ctx.t,
            "global": dict(self.global_divisor.coeffs),
            "components": {u: dict(D.coeffs) for u, D in self.component_divisors.items()},
            "checks": self.checks(),
        }


def _validate_three_blocks(blocks: Sequence[MarkedDivisor | Mapping[str, int]], p: int, ts: Sequence[int]):
    out = []
    for b, tj in zip(blocks, ts):
        coeffs = dict(b.coeffs) if hasattr(b, "coeffs") else dict(b)
        nj = p**tj - 1
        if sum(coeffs.values()) != 2 * nj:
            raise InputError(f"block degree {sum(coeffs.values())} differs from 2 * {nj}")
        if any(not 0 <= c <= nj for c in coeffs.values()):
            raise InputError(f"block coefficients must lie in [0, {nj}]")
        if not any(c == nj for c in coeffs.values()):
            raise InputError(f"no block coefficient equals {nj}")
        out.append(coeffs)
    return out


def classify_three_points(g: SemiGraph, marked: Sequence[str]) -> tuple[str, dict]:
    """Placement of three marked points on a tree-with-loops."""
    where = {x: g.open_edges[x] for x in marked}
    homes = sorted(set(where.values()))
    if len(homes) == 1:
        return "single", {"vertex": homes[0]}
    if len(homes) == 2:
        pair = next(v for v in homes if list(where.values()).count(v) == 2)
        lone = next(v for v in homes if v != pair)
        return "two-one", {"pair": pair, "lone": lone}
    edges = {}
    for a, b in itertools.combinations(marked, 2):
        path = minimal_path(g, where[a], where[b])
        edges[(a, b)] = set(path[1::2])
        edges[(b, a)] = edges[(a, b)]
    for b in marked:
        a, c = [x for x in marked if x != b]
        if not edges[(a, b)] & edges[(b, c)]:
            return "chain", {"middle": b, "ends": (a, c)}
    # a star: the center lies on all three paths
    paths = [set(minimal_path(g, where[a], where[b])[0::2]) for a, b in itertools.combinations(marked, 2)]
    (center,) = paths[0] & paths[1] & paths[2]
    return "star", {"center": center}


def build_three_point_divisors(
    curve: CurveModel,
    blocks: Sequence[MarkedDivisor | Mapping[str, int]],
    ts: Sequence[int],
    qt: QuasiTreeResult | None = None,
    *,
    enforce_threshold: bool = True,
) -> ThreePointDivisors:
    """Per-component divisors for a fixed three-block global divisor.

    Each component block puts the block value of a marked point at that point
    and, at a node, ``n_j`` minus the value of the unique marked point on the
    near side, which equals the far-side sum reduced by ``n_j``. The result
    is cross-checked against the far-side rule computed by graph search.
    """
    qt = qt if qt is not None else minimal_quasi_tree(curve)
    marked = tuple(sorted(curve.graph.open_edges))
    if len(marked) != 3 or len(blocks) != 3 or len(ts) != 3:
        raise InputError("the three-point construction needs three marked points and three blocks")
    p = curve.p
    coeff_blocks = _validate_three_blocks(blocks, p, ts)
    for b in coeff_blocks:
        if set(b) != set(marked):
            raise InputError("every block must list the three marked points")
    g = qt.gamma
    if betti_number(g.without_loops()) != 0:
        raise InputError("the quasi-tree minus its loops must be a tree")
    ctx = DigitContext(p, sum(ts))
    n = ctx.n
    threshold = max(theta_constant(total_genus(curve)) + 1, len(curve.graph.closed_edges) + 3)
    if enforce_threshold and n <= threshold:
        raise InputError(f"n = {n} must exceed {threshold}")
    offsets = [sum(ts[:j]) for j in range(3)]
    P = {x: sum(p ** offsets[j] * coeff_blocks[j][x] for j in range(3)) for x in marked}
    if any(c >= n for c in P.values()):
        raise InputError("the combined divisor has a coefficient equal to n")
    case, info = classify_three_points(g, marked)
    supports = _component_supports(g, marked)
    where = {x: g.open_edges[x] for x in marked}

    def near_point(u: str, branch: str) -> str | None:
        """The marked point on the near side when exactly one sits there."""
        far = _far_marked(g, u, branch, marked)
        near = [x for x in marked if x not in far]
        return near[0] if len(near) == 1 else None

    comp_blocks: dict[str, list[dict[str, int]]] = {u: [] for u in g.sorted_vertices()}
    for j in range(3):
        nj = p ** ts[j] - 1
        o = coeff_blocks[j]
        for u in g.sorted_vertices():
            q = {}
            for x in supports[u]:
                if x in marked:
                    q[x] = o[x]
                    continue
                far = _far_marked(g, u, x, marked)
                if len(far) == 1:
                    q[x] = o[far[0]]
                else:
                    # bracketed entry of the case displays: n_j minus the lone near point
                    q[x] = nj - o[near_point(u, x)]
            comp_blocks[u].append(q)
    # dual route: far-side sums reduced by n_j for every node
    for j in range(3):
        nj = p ** ts[j] - 1
        o = coeff_blocks[j]
        for u, bl in comp_blocks.items():
            q = bl[j]
            for x, c in q.items():
                if x in marked:
                    continue
                far = _far_marked(g, u, x, marked)
                expected = sum(o[y] for y in far) - nj * (len(far) - 1)
                if expected != c:
                    raise OracleMismatch(f"node value {c} at {x!r} differs from far-side value {expected}")
            if sum(q.values()) != (len(q) - 1) * nj:
                raise OracleMismatch(f"block degree on {u!r} is not (#D_u - 1) n_j")
    comps = {}
    for u, bl in comp_blocks.items():
        comps[u] = {x: sum(p ** offsets[j] * bl[j][x] for j in range(3)) for x in supports[u]}
    return ThreePointDivisors(
        case=case,
        ctx=ctx,
        global_divisor=MarkedDivisor(ctx, P),
        component_blocks={u: tuple(b) for u, b in comp_blocks.items()},
        component_divisors={u: MarkedDivisor(ctx, c) for u, c in comps.items()},
        graph=g,
        marked=marked,
    )



def degenerate_curves(
    max_vertices: int, max_marked: int, max_betti: int, p: int
) -> Iterator[CurveModel]:
    """Stable totally degenerate curves, one per placement of unlabeled points.

    Base graphs come up to isomorphism; placements of marked points are not
    reduced further, so a few curves repeat up to relabeling.
    """
    from .graphcover import base_graphs

    max_edges = max_vertices - 1 + max_betti
    for base in base_graphs(max_vertices, max_edges):
        if betti_number(base) > max_betti:
            continue
        verts = base.sorted_vertices()
        for k in range(max_marked + 1):
            for placement in itertools.combinations_with_replacement(verts, k):
                counts = {v: placement.count(v) for v in verts}
                if any(base.degree(v) + counts[v] < 3 for v in verts):
                    continue
                marked = {f"x{i + 1}": v for i, v in enumerate(placement)}
                graph = SemiGraph(verts, base.closed_edges, marked)
                yield CurveModel(graph, {v: 0 for v in verts}, p)
