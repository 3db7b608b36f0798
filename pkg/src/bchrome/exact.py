"""Exact b-chromatic number by backtracking (small graphs only)."""

from __future__ import annotations

from typing import Optional

from bchrome.coloring import Coloring
from bchrome.graph import Graph

DEFAULT_LIMIT_N = 16


class ExactSearchLimitError(ValueError):
    pass


def _missing(g: Graph, colors: list[int], v: int, k: int) -> set[int]:
    need = set(range(1, k + 1))
    need.discard(colors[v])
    for w in g.neighbors(v):
        need.discard(colors[w])
    return need


def _domain(g: Graph, colors: list[int], v: int, k: int) -> list[int]:
    taken = {colors[w] for w in g.neighbors(v)}
    return [c for c in range(1, k + 1) if c not in taken]


def _consistent(g: Graph, colors: list[int], dominators: list[int], k: int) -> bool:
    for v in dominators:
        need = _missing(g, colors, v, k)
        if not need:
            continue
        open_nbrs = [w for w in g.neighbors(v) if colors[w] == 0]
        if len(need) > len(open_nbrs):
            return False
        reachable: set[int] = set()
        for w in open_nbrs:
            reachable.update(_domain(g, colors, w, k))
        if not need <= reachable:
            return False
    return True


def _complete(g: Graph, colors: list[int], dominators: list[int], k: int) -> bool:
    if not _consistent(g, colors, dominators, k):
        return False
    urgent = {
        w
        for v in dominators
        if _missing(g, colors, v, k)
        for w in g.neighbors(v)
        if colors[w] == 0
    }
    best: Optional[tuple[tuple[int, int, int], int, list[int]]] = None
    for v in g.vertices():
        if colors[v]:
            continue
        dom = _domain(g, colors, v, k)
        if not dom:
            return False
        key = (0 if v in urgent else 1, len(dom), v)
        if best is None or key < best[0]:
            best = (key, v, dom)
    if best is None:
        return True
    _, v, dom = best
    for c in dom:
        colors[v] = c
        if _complete(g, colors, dominators, k):
            return True
    colors[v] = 0
    return False


def find_b_coloring(g: Graph, k: int) -> Optional[Coloring]:
    """A b-coloring of ``g`` with exactly ``k`` colors, or ``None``.

    Dominating vertices are chosen first, one per color in increasing label
    order (this removes the color-permutation symmetry), then the remaining
    vertices are filled by most-constrained-first backtracking.
    """
    if k < 1 or k > g.n:
        return None
    candidates = [v for v in g.vertices() if g.degree(v) >= k - 1]
    if len(candidates) < k:
        return None
    colors = [0] * g.n
    dominators: list[int] = []

    def choose(c: int, start: int) -> bool:
        if c > k:
            return _complete(g, colors, dominators, k)
        for idx in range(start, len(candidates) - (k - c)):
            v = candidates[idx]
            if colors[v] or any(colors[w] == c for w in g.neighbors(v)):
                continue
            colors[v] = c
            dominators.append(v)
            if _consistent(g, colors, dominators, k) and choose(c + 1, idx + 1):
                return True
            dominators.pop()
            colors[v] = 0
        return False

    if not choose(1, 0):
        return None
    return Coloring.from_list(colors, k)


def exact_phi_with_witness(g: Graph, limit_n: int = DEFAULT_LIMIT_N) -> tuple[int, Coloring]:
    if g.n > limit_n:
        raise ExactSearchLimitError(f"exact search limited to n <= {limit_n}, got n={g.n}")
    if g.n == 0:
        raise ExactSearchLimitError("empty graph")
    for k in range(g.max_degree() + 1, 0, -1):
        found = find_b_coloring(g, k)
        if found is not None:
            return k, found
    raise AssertionError("every graph has a b-coloring with chromatic-number many colors")


def exact_phi(g: Graph, limit_n: int = DEFAULT_LIMIT_N) -> int:
    return exact_phi_with_witness(g, limit_n)[0]
