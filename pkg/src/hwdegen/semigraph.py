"""Semi-graphs and combinatorial models of pointed stable curves.

A semi-graph has vertices, closed edges (two branches, possibly a loop) and
open edges (one branch). Ids are opaque strings and every traversal visits
them in lexicographic order so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InputError

__all__ = [
    "SemiGraph",
    "CurveModel",
    "betti_number",
    "loop_edges",
    "minimal_path",
    "total_genus",
    "total_p_rank",
    "is_prime",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class SemiGraph:
    """Connected semi-graph.

    ``closed_edges`` maps an edge id to its ordered pair of ends; the order
    only matters for naming branches (``"<e>.1"`` sits at ``ends[0]``).
    """

    vertices: frozenset[str]
    closed_edges: Mapping[str, tuple[str, str]]
    open_edges: Mapping[str, str]

    def __init__(
        self,
        vertices: Iterable[str],
        closed_edges: Mapping[str, Iterable[str]] | None = None,
        open_edges: Mapping[str, str] | None = None,
        *,
        allow_empty: bool = False,
    ) -> None:
        verts = list(vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertex id")
        vset = frozenset(verts)
        closed: dict[str, tuple[str, str]] = {}
        for e, ends in sorted((closed_edges or {}).items()):
            ends = tuple(ends)
            if len(ends) != 2:
                raise InputError(f"closed edge {e!r} needs exactly two ends")
            for v in ends:
                if v not in vset:
                    raise InputError(f"closed edge {e!r} references unknown vertex {v!r}")
            closed[e] = (ends[0], ends[1])
        opened: dict[str, str] = {}
        for e, v in sorted((open_edges or {}).items()):
            if v not in vset:
                raise InputError(f"open edge {e!r} references unknown vertex {v!r}")
            opened[e] = v
        branch_names = {f"{e}.{k}" for e in closed for k in (1, 2)}
        clash = sorted(branch_names & set(opened))
        if clash:
            raise InputError(f"open edge ids clash with node branch names: {clash}")
        if not vset and not allow_empty:
            raise InputError("a semi-graph needs at least one vertex")
        if not vset and (closed or opened):
            raise InputError("edges without vertices")
        object.__setattr__(self, "vertices", vset)
        object.__setattr__(self, "closed_edges", closed)
        object.__setattr__(self, "open_edges", opened)
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in sorted(vset)}
        for e, (a, b) in closed.items():
            adj[a].append((e, b))
            if a != b:
                adj[b].append((e, a))
        object.__setattr__(self, "_adj", adj)
        if vset and not self._connected():
            raise InputError("semi-graph is not connected")

    def _connected(self) -> bool:
        start = min(self.vertices)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for _, w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices)

    def neighbors(self, v: str) -> list[tuple[str, str]]:
        """(edge, other end) pairs at ``v``, loops listed once."""
        return list(self._adj[v])

    def open_at(self, v: str) -> list[str]:
        return sorted(e for e, w in self.open_edges.items() if w == v)

    def closed_at(self, v: str) -> list[str]:
        return sorted(e for e, _ in self._adj[v])

    def degree(self, v: str) -> int:
        """Number of branches at ``v``: loops count twice."""
        d = len(self.open_at(v))
        for e, _ in self._adj[v]:
            a, b = self.closed_edges[e]
            d += 2 if a == b else 1
        return d

    def branches_at(self, v: str) -> list[str]:
        """Open edges at ``v`` followed by node branches ``"<e>.1"``/``"<e>.2"``."""
        out = self.open_at(v)
        for e in self.closed_at(v):
            a, b = self.closed_edges[e]
            if a == v:
                out.append(f"{e}.1")
            if b == v:
                out.append(f"{e}.2")
        return out

    def relabel(self, vmap: Mapping[str, str], emap: Mapping[str, str] | None = None) -> "SemiGraph":
        emap = emap or {}
        return SemiGraph(
            [vmap[v] for v in self.vertices],
            {emap.get(e, e): (vmap[a], vmap[b]) for e, (a, b) in self.closed_edges.items()},
            {emap.get(e, e): vmap[v] for e, v in self.open_edges.items()},
            allow_empty=True,
        )

    def without_loops(self) -> "SemiGraph":
        loops = loop_edges(self)
        return SemiGraph(
            self.vertices,
            {e: ends for e, ends in self.closed_edges.items() if e not in loops},
            self.open_edges,
            allow_empty=True,
        )

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v} for v in self.sorted_vertices()],
            "closed_edges": [{"id": e, "ends": list(ends)} for e, ends in self.closed_edges.items()],
            "open_edges": [{"id": e, "vertex": v} for e, v in self.open_edges.items()],
        }

    def to_dot(self, name: str = "G") -> str:
        lines = [f'graph "{name}" {{']
        for v in self.sorted_vertices():
            lines.append(f'  "{v}" [shape=circle];')
        for e, (a, b) in self.closed_edges.items():
            lines.append(f'  "{a}" -- "{b}" [label="{e}"];')
        for e, v in self.open_edges.items():
            lines.append(f'  "open:{e}" [shape=point, xlabel="{e}"];')
            lines.append(f'  "{v}" -- "open:{e}";')
        lines.append("}")
        return "\n".join(lines)

    def __setattr__(self, name, value):
        raise AttributeError("SemiGraph is immutable")

    def __repr__(self) -> str:
        return (
            f"SemiGraph(vertices={self.sorted_vertices()}, closed_edges={dict(self.closed_edges)}, "
            f"open_edges={dict(self.open_edges)})"
        )

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.closed_edges.items()), tuple(self.open_edges.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and dict(self.closed_edges) == dict(other.closed_edges)
            and dict(self.open_edges) == dict(other.open_edges)
        )


def betti_number(g: SemiGraph) -> int:
    if g.is_empty:
        return 0
    return len(g.closed_edges) - len(g.vertices) + 1


def loop_edges(g: SemiGraph) -> set[str]:
    return {e for e, (a, b) in g.closed_edges.items() if a == b}


def is_tree_after_loops(g: SemiGraph) -> bool:
    return betti_number(g.without_loops()) == 0


def minimal_path(g: SemiGraph, v: str, w: str) -> list[str]:
    """Alternating vertex/edge list from ``v`` to ``w`` in the loop-free tree."""
    if v not in g.vertices or w not in g.vertices:
        raise InputError(f"unknown vertex in path query ({v!r}, {w!r})")
    if not is_tree_after_loops(g):
        raise InputError("minimal paths need a graph that is a tree once loops are removed")
    parent: dict[str, tuple[str, str] | None] = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if u == w:
            break
        for e, x in g.neighbors(u):
            if x != u and x not in parent:
                parent[x] = (e, u)
                queue.append(x)
    path = [w]
    u = w
    while parent[u] is not None:
        e, prev = parent[u]
        path += [e, prev]
        u = prev
    return path[::-1]


@dataclass(frozen=True)
class CurveModel:
    """Dual semi-graph with per-vertex genus and p-rank in characteristic ``p``."""

    graph: SemiGraph
    vertex_genus: Mapping[str, int]
    p: int
    vertex_p_rank: Mapping[str, int] | None = None
    require_stable: bool = True

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputError(f"characteristic {self.p} is not prime")
        g = self.graph
        if set(self.vertex_genus) != set(g.vertices):
            raise InputError("vertex_genus must list exactly the vertices")
        genus = {v: int(self.vertex_genus[v]) for v in sorted(g.vertices)}
        ranks = dict(genus) if self.vertex_p_rank is None else dict(self.vertex_p_rank)
        if set(ranks) != set(g.vertices):
            raise InputError("vertex_p_rank must list exactly the vertices")
        for v in genus:
            if genus[v] < 0:
                raise InputError(f"negative genus at {v!r}")
            if not 0 <= ranks[v] <= genus[v]:
                raise InputError(f"p-rank at {v!r} must lie in [0, genus]")
            if self.require_stable and 2 * genus[v] - 2 + g.degree(v) <= 0:
                raise InputError(f"vertex {v!r} violates the stability inequality")
        object.__setattr__(self, "vertex_genus", genus)
        object.__setattr__(self, "vertex_p_rank", {v: int(ranks[v]) for v in sorted(ranks)})

    @property
    def n_marked(self) -> int:
        return len(self.graph.open_edges)

    @property
    def is_totally_degenerate(self) -> bool:
        return all(x == 0 for x in self.vertex_genus.values())

    def topological_type(self) -> tuple[int, int]:
        return total_genus(self), self.n_marked

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["vertices"] = [
            {"id": v, "genus": self.vertex_genus[v], "p_rank": self.vertex_p_rank[v]}
            for v in self.graph.sorted_vertices()
        ]
        body = {"p": self.p, **out}
        if not self.require_stable:
            body["require_stable"] = False
        return body


def total_genus(c: CurveModel) -> int:
    return sum(c.vertex_genus.values()) + betti_number(c.graph)


def total_p_rank(c: CurveModel) -> int:
    return sum(c.vertex_p_rank.values()) + betti_number(c.graph)
