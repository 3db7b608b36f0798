"""Bipartite matching via augmenting paths (Kuhn's algorithm)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Optional, Sequence


@dataclass(frozen=True)
class BipartiteInstance:
    """Bipartite graph between ``left`` and ``right`` items.

    Edges are ``(left_index, right_index)`` pairs. ``u_star`` and ``v_star``
    mark the exceptional left/right vertices allowed a degree below half
    of the part size.
    """

    left: tuple[Any, ...]
    right: tuple[Any, ...]
    edges: frozenset[tuple[int, int]]
    u_star: Optional[int] = None
    v_star: Optional[int] = None

    def __post_init__(self) -> None:
        p, q = len(self.left), len(self.right)
        for i, j in self.edges:
            if not (0 <= i < p and 0 <= j < q):
                raise ValueError(f"edge ({i}, {j}) out of range for a {p}x{q} instance")
        if self.u_star is not None and not 0 <= self.u_star < p:
            raise ValueError(f"u_star {self.u_star} out of range")
        if self.v_star is not None and not 0 <= self.v_star < q:
            raise ValueError(f"v_star {self.v_star} out of range")

    @classmethod
    def build(
        cls,
        left: Sequence[Any],
        right: Sequence[Any],
        edges,
        u_star: Optional[int] = None,
        v_star: Optional[int] = None,
    ) -> "BipartiteInstance":
        return cls(tuple(left), tuple(right), frozenset(edges), u_star, v_star)

    def left_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.left]
        for i, j in sorted(self.edges):
            adj[i].append(j)
        return adj

    def left_degrees(self) -> list[int]:
        deg = [0] * len(self.left)
        for i, _ in self.edges:
            deg[i] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * len(self.right)
        for _, j in self.edges:
            deg[j] += 1
        return deg

    def to_json(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "edges": [list(e) for e in sorted(self.edges)],
            "u_star": self.u_star,
            "v_star": self.v_star,
        }


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


class PerfectMatchingError(RuntimeError):
    """No perfect matching; ``witness`` is a left subset with too few neighbours."""

    def __init__(self, witness: frozenset[int], matching: Matching) -> None:
        super().__init__(
            f"no perfect matching: left set {sorted(witness)} violates Hall's condition"
        )
        self.witness = witness
        self.matching = matching


def _kuhn(adj: list[list[int]], q: int) -> list[int]:
    match_right = [-1] * q

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(adj)):
        augment(u, [False] * q)
    return match_right


def max_matching(inst: BipartiteInstance) -> Matching:
    match_right = _kuhn(inst.left_adjacency(), len(inst.right))
    return Matching(tuple(sorted((u, v) for v, u in enumerate(match_right) if u >= 0)))


def lemma2_hypotheses_hold(inst: BipartiteInstance) -> bool:
    """Degree condition guaranteeing a perfect matching in a balanced bipartite graph.

    Every vertex other than ``u_star``/``v_star`` needs degree at least half
    the part size; the exceptional ones need only positive degree.
    """
    p = len(inst.left)
    if p != len(inst.right):
        return False
    for side, degrees, star in (
        ("left", inst.left_degrees(), inst.u_star),
        ("right", inst.right_degrees(), inst.v_star),
    ):
        for idx, deg in enumerate(degrees):
            if idx == star:
                if deg <= 0:
                    return False
            elif 2 * deg < p:
                return False
    return True


def hall_violator(inst: BipartiteInstance, matching: Matching) -> frozenset[int]:
    """Left vertices reachable by alternating paths from unmatched left vertices."""
    adj = inst.left_adjacency()
    left_to_right = matching.as_dict()
    right_to_left = {v: u for u, v in matching.pairs}
    free = [u for u in range(len(inst.left)) if u not in left_to_right]
    reached = set(free)
    queue = deque(free)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            w = right_to_left.get(v)
            if w is not None and w not in reached:
                reached.add(w)
                queue.append(w)
    return frozenset(reached)


def perfect_matching_or_fail(inst: BipartiteInstance) -> Matching:
    if len(inst.left) != len(inst.right):
        raise ValueError(
            f"perfect matching needs equal parts, got {len(inst.left)} and {len(inst.right)}"
        )
    matching = max_matching(inst)
    if matching.size < len(inst.left):
        raise PerfectMatchingError(hall_violator(inst, matching), matching)
    return matching
