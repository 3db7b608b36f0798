"""Colorings, b-coloring certificates and greedy extension."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from bchrome.graph import Graph


class ColoringError(ValueError):
    pass


class NotBColoringError(ColoringError):
    """Some colors have no color-dominating vertex."""

    def __init__(self, missing: list[int]) -> None:
        super().__init__(f"colors without a dominating vertex: {missing}")
        self.missing = missing


@dataclass(frozen=True)
class Coloring:
    """Map vertex -> color in ``1..k``; may be partial."""

    assignment: Mapping[int, int]
    k: int

    @classmethod
    def from_list(cls, colors: list[int], k: int) -> "Coloring":
        return cls({v: c for v, c in enumerate(colors)}, k)

    def is_total(self, g: Graph) -> bool:
        return all(v in self.assignment for v in g.vertices())

    def colors_used(self) -> set[int]:
        return set(self.assignment.values())

    def as_list(self, n: int) -> list[int]:
        return [self.assignment[v] for v in range(n)]

    def to_json(self, n: int) -> dict:
        return {"k": self.k, "colors": self.as_list(n)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Coloring":
        return cls.from_list([int(c) for c in data["colors"]], int(data["k"]))


@dataclass(frozen=True)
class BCertificate:
    dominating: Mapping[int, int]

    def to_json(self) -> dict:
        return {"dominating": {str(c): v for c, v in sorted(self.dominating.items())}}


def is_proper(g: Graph, c: Coloring) -> bool:
    a = c.assignment
    return all(
        a[u] != a[v] for u, v in g.edges() if u in a and v in a
    )


def is_dominating(g: Graph, assignment: Mapping[int, int], v: int, k: int) -> bool:
    own = assignment.get(v)
    seen = {assignment[w] for w in g.neighbors(v) if w in assignment}
    return own is not None and seen >= set(range(1, k + 1)) - {own}


def certify_b_coloring(g: Graph, c: Coloring) -> BCertificate:
    """Smallest-label color-dominating vertex for each color ``1..k``."""
    if not c.is_total(g):
        raise ColoringError("coloring is partial")
    if any(not 1 <= col <= c.k for col in c.assignment.values()):
        raise ColoringError(f"colors outside 1..{c.k}")
    if not is_proper(g, c):
        raise ColoringError("coloring is not proper")
    dominating: dict[int, int] = {}
    for v in g.vertices():
        col = c.assignment[v]
        if col not in dominating and is_dominating(g, c.assignment, v, c.k):
            dominating[col] = v
    missing = [col for col in range(1, c.k + 1) if col not in dominating]
    if missing:
        raise NotBColoringError(missing)
    return BCertificate(dominating)


def greedy_extend(g: Graph, partial: Coloring, k: int) -> Coloring:
    """Complete ``partial`` in ascending label order with the smallest free color."""
    if not is_proper(g, partial):
        raise ColoringError("partial coloring is not proper")
    assignment = dict(partial.assignment)
    for v in g.vertices():
        if v in assignment:
            continue
        taken = {assignment[w] for w in g.neighbors(v) if w in assignment}
        free = next((col for col in range(1, k + 1) if col not in taken), None)
        if free is None:
            raise ColoringError(f"no color in 1..{k} available for vertex {v}")
        assignment[v] = free
    return Coloring(assignment, k)
