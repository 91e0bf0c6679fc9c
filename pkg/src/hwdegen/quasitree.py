"""Minimal quasi-trees attached to the marked points of a curve.

Cut enough non-loop nodes to make the dual graph a tree (each cut node leaves
two new open edges ``"<e>.1"`` and ``"<e>.2"``), then repeatedly delete
terminal vertices that carry none of the original marked points. Edges severed
by a deletion survive as open edges under their own id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .semigraph import CurveModel, SemiGraph, betti_number, is_tree_after_loops, loop_edges

__all__ = [
    "QuasiTreeResult",
    "select_E",
    "normalize_at",
    "terminal_vertices_avoiding",
    "minimal_quasi_tree",
    "EMPTY_GRAPH",
]

EMPTY_GRAPH = SemiGraph([], allow_empty=True)


def half_names(e: str) -> tuple[str, str]:
    return f"{e}.1", f"{e}.2"


def _bfs_tree_edges(g: SemiGraph) -> set[str]:
    start = min(g.vertices)
    seen = {start}
    tree: set[str] = set()
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e, w in sorted(g.neighbors(v)):
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    return tree


def _spans_tree(g: SemiGraph, removed: set[str]) -> bool:
    kept = {e: ends for e, ends in g.closed_edges.items() if e not in removed and ends[0] != ends[1]}
    if len(kept) != len(g.vertices) - 1:
        return False
    try:
        SemiGraph(g.vertices, kept)
    except InputError:
        return False
    return True


def select_E(g: SemiGraph, hint: Iterable[str] | None = None) -> set[str]:
    """Non-loop closed edges whose removal, with all loops, leaves a spanning tree."""
    if g.is_empty:
        return set()
    candidates = set(g.closed_edges) - loop_edges(g)
    if hint is not None:
        hint = set(hint)
        if not hint <= candidates:
            raise InputError(f"hint edges {sorted(hint - candidates)} are not non-loop closed edges")
        if not _spans_tree(g, hint):
            raise InputError("removing the hint edges does not leave a spanning tree")
        return hint
    return candidates - _bfs_tree_edges(g)


def normalize_at(g: SemiGraph, E: Iterable[str]) -> SemiGraph:
    E = set(E)
    loops = loop_edges(g)
    for e in E:
        if e not in g.closed_edges:
            raise InputError(f"{e!r} is not a closed edge")
        if e in loops:
            raise InputError(f"cannot cut the loop {e!r}")
    closed = {e: ends for e, ends in g.closed_edges.items() if e not in E}
    opened = dict(g.open_edges)
    for e in sorted(E):
        a, b = g.closed_edges[e]
        h1, h2 = half_names(e)
        opened[h1] = a
        opened[h2] = b
    return SemiGraph(g.vertices, closed, opened)


def terminal_vertices_avoiding(g: SemiGraph, protected: Iterable[str]) -> set[str]:
    if g.is_empty:
        return set()
    if not is_tree_after_loops(g):
        raise InputError("terminal vertices are defined for graphs that are trees up to loops")
    protected = set(protected)
    out = set()
    for v in g.vertices:
        non_loop = [e for e, w in g.neighbors(v) if w != v]
        if len(non_loop) == 1 and not protected.intersection(g.open_at(v)):
            out.add(v)
    return out


def _prune(g: SemiGraph, doomed: set[str]) -> SemiGraph:
    vertices = g.vertices - doomed
    closed = {}
    opened = {e: v for e, v in g.open_edges.items() if v in vertices}
    for e, (a, b) in g.closed_edges.items():
        if a in vertices and b in vertices:
            closed[e] = (a, b)
        elif a in vertices:
            opened[e] = a
        elif b in vertices:
            opened[e] = b
    return SemiGraph(vertices, closed, opened)


@dataclass(frozen=True)
class QuasiTreeResult:
    gamma: SemiGraph
    selected_E: frozenset[str]
    pruned_vertices: tuple[frozenset[str], ...]
    d_e1: frozenset[str]
    d_e2: frozenset[str]
    image: SemiGraph
    source: SemiGraph

    @property
    def marked(self) -> list[str]:
        return sorted(self.source.open_edges)

    def to_json(self) -> dict:
        return {
            "selected_E": sorted(self.selected_E),
            "pruned_vertices": [sorted(s) for s in self.pruned_vertices],
            "d_e1": sorted(self.d_e1),
            "d_e2": sorted(self.d_e2),
            "gamma": self.gamma.to_json(),
            "image": self.image.to_json(),
        }

    def to_dot(self) -> str:
        return "\n".join(
            [self.source.to_dot("input"), self.gamma.to_dot("quasi_tree"), self.image.to_dot("image")]
        )


def minimal_quasi_tree(c: CurveModel | SemiGraph, hint_E: Iterable[str] | None = None) -> QuasiTreeResult:
    g = c.graph if isinstance(c, CurveModel) else c
    if not g.open_edges:
        return QuasiTreeResult(EMPTY_GRAPH, frozenset(), (), frozenset(), frozenset(), EMPTY_GRAPH, g)
    E = select_E(g, hint_E)
    protected = set(g.open_edges)
    current = normalize_at(g, E)
    pruned: list[frozenset[str]] = []
    while True:
        doomed = terminal_vertices_avoiding(current, protected)
        if not doomed:
            break
        pruned.append(frozenset(doomed))
        current = _prune(current, doomed)
    halves = {h: e for e in E for h in half_names(e)}
    extra = set(current.open_edges) - protected
    d_e2 = {x for x in extra if x in halves}
    d_e1 = extra - d_e2
    # re-glue nodes whose two halves both survived; a lone half has no partner
    # in the image, so its point is not marked there
    closed = dict(current.closed_edges)
    opened = {e: v for e, v in current.open_edges.items() if e not in d_e2}
    for e in sorted(E):
        h1, h2 = half_names(e)
        if h1 in d_e2 and h2 in d_e2:
            closed[e] = (current.open_edges[h1], current.open_edges[h2])
    image = SemiGraph(current.vertices, closed, opened)
    assert betti_number(current.without_loops()) == 0
    return QuasiTreeResult(current, frozenset(E), tuple(pruned), frozenset(d_e1), frozenset(d_e2), image, g)
