"""Instance generators: named fixtures, random C4-free regular graphs, bridged pairs."""

from __future__ import annotations

import random
from typing import Optional

from bchrome.graph import Edge, Graph


class GenerationError(RuntimeError):
    def __init__(self, message: str, attempts: int) -> None:
        super().__init__(message)
        self.attempts = attempts


def gen_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _closes_four_cycle(adj: list[set[int]], a: int, b: int) -> bool:
    # a new edge ab lies on a C4 iff some path a-x-y-b of length 3 exists
    nb = adj[b]
    for x in adj[a]:
        if x == b:
            continue
        for y in adj[x]:
            if y != a and y in nb:
                return True
    return False


def _pairing_attempt(n: int, d: int, rng: random.Random) -> Optional[list[set[int]]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    free = [d] * n
    open_vertices = list(range(n))
    while open_vertices:
        # most constrained vertex first; partners drawn in proportion to free stubs
        best: Optional[tuple[int, int, list[int]]] = None
        for a in open_vertices:
            partners = [
                b for b in open_vertices
                if b != a and b not in adj[a] and not _closes_four_cycle(adj, a, b)
            ]
            if len(partners) < free[a]:
                return None
            key = len(partners) - free[a]
            if best is None or key < best[0]:
                best = (key, a, partners)
        _, a, partners = best
        b = rng.choices(partners, weights=[free[x] for x in partners])[0]
        adj[a].add(b)
        adj[b].add(a)
        free[a] -= 1
        free[b] -= 1
        open_vertices = [v for v in open_vertices if free[v] > 0]
    return adj


def gen_random_regular_c4_free(n: int, d: int, seed: int, max_tries: int) -> Graph:
    """Random ``d``-regular C4-free graph on ``n`` vertices.

    Stubs are paired one at a time; a pairing that would create a loop, a
    repeated edge or a 4-cycle is never chosen, and when a stub has no
    admissible partner the whole attempt is discarded and restarted.
    Deterministic for a given ``seed``.
    """
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices (need d < n and n*d even)")
    if max_tries < 1:
        raise ValueError("max_tries must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        adj = _pairing_attempt(n, d, rng)
        if adj is not None:
            return Graph.from_adjacency(adj)
    raise GenerationError(
        f"no C4-free {d}-regular graph on {n} vertices after {max_tries} attempts",
        attempts=max_tries,
    )


def gen_bridged_pair(h: Graph, edge: Edge) -> Graph:
    """Two copies of ``h`` minus ``edge``, rejoined by the two crossing edges.

    Copy one keeps labels ``0..n-1``, copy two is shifted by ``n``.
    """
    u, v = edge
    if not h.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge of the base graph")
    n = h.n
    key = (min(u, v), max(u, v))
    kept = [e for e in h.edges() if e != key]
    edges = kept + [(a + n, b + n) for a, b in kept] + [(u, v + n), (v, u + n)]
    return Graph(2 * n, edges)
