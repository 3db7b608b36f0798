"""Immutable simple graph and structural predicates."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

INFINITE_GIRTH = math.inf

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable after construction; every algorithm in the
    package reads adjacency through :meth:`neighbors` (sorted tuple) or
    :meth:`neighbor_set`.
    """

    __slots__ = ("_n", "_adj", "_sorted", "_m")

    def __init__(self, n: int, edges: Iterable[Edge] = ()) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self._sorted = tuple(tuple(sorted(s)) for s in adj)
        self._m = sum(len(s) for s in adj) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Iterable[Iterable[int]]) -> "Graph":
        rows = [list(r) for r in adjacency]
        edges = [(u, v) for u, row in enumerate(rows) for v in row if u < v]
        g = cls(len(rows), edges)
        for u, row in enumerate(rows):
            if set(row) != g._adj[u]:
                raise ValueError(f"adjacency is not symmetric at vertex {u}")
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._sorted[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self._n) for v in self._sorted[u] if u < v]

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(s) for s in self._adj), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


@dataclass(frozen=True)
class StructureReport:
    regular_degree: Optional[int]
    girth: Union[int, float]
    has_c4: bool
    connected: bool


def regular_degree(g: Graph) -> Optional[int]:
    """Common degree if ``g`` is regular, else ``None``."""
    if g.n == 0:
        return None
    d = g.degree(0)
    return d if all(g.degree(v) == d for v in g.vertices()) else None


def has_four_cycle(g: Graph) -> bool:
    # a pair of vertices with two common neighbours is exactly a C4
    seen: set[Edge] = set()
    for w in g.vertices():
        nbrs = g.neighbors(w)
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1:]:
                if (u, v) in seen:
                    return True
                seen.add((u, v))
    return False


def girth(g: Graph) -> Union[int, float]:
    """Length of a shortest cycle, or ``INFINITE_GIRTH`` for forests."""
    best = INFINITE_GIRTH
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def connected_components(g: Graph, removed: Iterable[Edge] = ()) -> list[list[int]]:
    """Components of ``g`` minus ``removed``, each sorted, ordered by smallest label."""
    gone = {(min(u, v), max(u, v)) for u, v in removed}
    label = [-1] * g.n
    comps: list[list[int]] = []
    for root in g.vertices():
        if label[root] >= 0:
            continue
        label[root] = len(comps)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if label[w] < 0 and (min(u, w), max(u, w)) not in gone:
                    label[w] = len(comps)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def structure_report(g: Graph) -> StructureReport:
    return StructureReport(
        regular_degree=regular_degree(g),
        girth=girth(g),
        has_c4=has_four_cycle(g),
        connected=is_connected(g),
    )


def c4_edge_bound_holds(n: int, m: int) -> bool:
    """Exact integer test of ``m <= n/4 * (1 + sqrt(4n - 3))``.

    This is the classical upper bound on the size of a C4-free graph.
    """
    if n == 0:
        return m == 0
    lhs = 4 * m - n
    if lhs <= 0:
        return True
    return lhs * lhs <= n * n * (4 * n - 3)
