"""Edge connectivity, minimum cuts and super-edge-connectivity.

Flows are unit-capacity in each direction of every edge and are found by
breadth-first augmentation, scanning vertices in ascending label order so
that every witness is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from bchrome.graph import Edge, Graph, connected_components, is_connected, regular_degree


class ConnectivityError(ValueError):
    pass


class InvalidCutError(ValueError):
    pass


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeCut:
    edges: frozenset[Edge]
    side_s: frozenset[int]
    side_t: frozenset[int]

    @classmethod
    def from_side(cls, g: Graph, side: Iterable[int]) -> "EdgeCut":
        s = frozenset(side)
        t = frozenset(v for v in g.vertices() if v not in s)
        edges = frozenset(_norm(u, v) for u in s for v in g.neighbors(u) if v in t)
        return cls(edges=edges, side_s=s, side_t=t)

    @property
    def size(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[list[int]]:
        return [list(e) for e in sorted(self.edges)]


def validate_cut(g: Graph, cut: EdgeCut) -> None:
    """Recompute every EdgeCut invariant from ``g``; raise on the first violation."""
    everything = frozenset(g.vertices())
    if cut.side_s | cut.side_t != everything or cut.side_s & cut.side_t:
        raise InvalidCutError("sides do not partition the vertex set")
    if not cut.side_s or not cut.side_t:
        raise InvalidCutError("a side of the cut is empty")
    crossing = frozenset(
        _norm(u, v) for u in cut.side_s for v in g.neighbors(u) if v in cut.side_t
    )
    if crossing != cut.edges:
        raise InvalidCutError("cut edges differ from the edges crossing the bipartition")


@dataclass(frozen=True)
class CutReport:
    lam: int
    witness: EdgeCut
    super_edge_connected: Optional[bool]
    nontrivial_witness: Optional[EdgeCut]

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "super_edge_connected": self.super_edge_connected,
            "witness_edges": self.witness.sorted_edges(),
            "nontrivial_witness_edges": (
                self.nontrivial_witness.sorted_edges() if self.nontrivial_witness else None
            ),
        }


@dataclass
class ComponentDecomposition:
    components: list[list[int]]
    sat: frozenset[int]
    boundary: list[frozenset[int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "sat": sorted(self.sat),
            "boundary": [sorted(a) for a in self.boundary],
        }


def _max_flow(
    g: Graph, sources: frozenset[int], sinks: frozenset[int], limit: Optional[int] = None
) -> tuple[int, set[int]]:
    """Unit-capacity max flow between two merged vertex sets.

    Returns the flow value (stopping early once it exceeds ``limit``) and
    the set of vertices reachable from ``sources`` in the final residual graph.
    """
    flow: dict[Edge, int] = {}
    value = 0
    start = sorted(sources)
    while True:
        parent: dict[int, int] = {s: -1 for s in start}
        queue = deque(start)
        hit = -1
        while queue and hit < 0:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in parent or flow.get((u, w), 0) >= 1:
                    continue
                parent[w] = u
                if w in sinks:
                    hit = w
                    break
                queue.append(w)
        if hit < 0:
            return value, set(parent)
        w = hit
        while parent[w] >= 0:
            u = parent[w]
            flow[(u, w)] = flow.get((u, w), 0) + 1
            flow[(w, u)] = flow.get((w, u), 0) - 1
            w = u
        value += 1
        if limit is not None and value > limit:
            return value, set()


def edge_connectivity(g: Graph) -> tuple[int, EdgeCut]:
    """Return ``(lambda, witness)`` using flows from vertex 0 to every other vertex."""
    if g.n < 2:
        raise ConnectivityError("edge connectivity needs at least two vertices")
    if not is_connected(g):
        raise ConnectivityError("graph is disconnected (lambda would be 0)")
    source = frozenset([0])
    best: Optional[tuple[int, set[int]]] = None
    for t in range(1, g.n):
        limit = None if best is None else best[0]
        value, side = _max_flow(g, source, frozenset([t]), limit)
        if best is None or value < best[0]:
            best = (value, side)
    assert best is not None
    return best[0], EdgeCut.from_side(g, best[1])


def brute_force_edge_connectivity(g: Graph) -> int:
    """Minimum crossing-edge count over all bipartitions (vertex 0 fixed on one side)."""
    if not 2 <= g.n <= 14:
        raise ConnectivityError(f"brute force oracle supports 2 <= n <= 14, got n={g.n}")
    edges = g.edges()
    best = g.m
    for mask in range(2 ** (g.n - 1) - 1):
        # bit i of mask puts vertex i+1 beside vertex 0
        in_s = (mask << 1) | 1
        crossing = sum(1 for u, v in edges if ((in_s >> u) ^ (in_s >> v)) & 1)
        best = min(best, crossing)
    return best


def is_trivial_cut(g: Graph, cut: EdgeCut) -> bool:
    validate_cut(g, cut)
    return min(len(cut.side_s), len(cut.side_t)) == 1


def find_nontrivial_min_cut(g: Graph, d: int) -> Optional[EdgeCut]:
    """A minimum edge-cut with at least two vertices on each side, if any.

    When ``lambda < d`` every minimum cut qualifies. When ``lambda == d`` the
    restricted edge connectivity is computed by merging the endpoints of two
    vertex-disjoint edges into a source and a sink; a pair reaching flow ``d``
    witnesses a nontrivial minimum cut.
    """
    if g.n < 4:
        raise ConnectivityError("need at least four vertices")
    if regular_degree(g) != d:
        raise ConnectivityError(f"graph is not {d}-regular")
    lam, witness = edge_connectivity(g)
    if lam < d:
        return witness
    edges = g.edges()
    for (a, b), (c, e) in combinations(edges, 2):
        if len({a, b, c, e}) < 4:
            continue
        value, side = _max_flow(g, frozenset((a, b)), frozenset((c, e)), limit=d)
        if value <= d:
            return EdgeCut.from_side(g, side)
    return None


def is_super_edge_connected(g: Graph) -> bool:
    d = regular_degree(g)
    if d is None:
        raise ConnectivityError("super-edge-connectivity is defined for regular graphs only")
    return find_nontrivial_min_cut(g, d) is None


def cut_report(g: Graph) -> CutReport:
    lam, witness = edge_connectivity(g)
    d = regular_degree(g)
    if d is None or g.n < 4:
        return CutReport(lam, witness, None, None)
    nontrivial = find_nontrivial_min_cut(g, d)
    return CutReport(lam, witness, nontrivial is None, nontrivial)


def decompose_by_cut(g: Graph, cut: EdgeCut) -> ComponentDecomposition:
    validate_cut(g, cut)
    components = connected_components(g, removed=cut.edges)
    if len(components) < 2:
        raise InvalidCutError("removing the cut does not disconnect the graph")
    sat = frozenset(v for e in cut.edges for v in e)
    boundary = [frozenset(v for v in comp if v in sat) for comp in components]
    return ComponentDecomposition(components=components, sat=sat, boundary=boundary)


def component_size_check(g: Graph, d: int, decomposition: ComponentDecomposition) -> bool:
    return all(len(comp) >= d + 4 for comp in decomposition.components)
