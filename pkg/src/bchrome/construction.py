"""Constructive (d+1)-b-coloring of C4-free d-regular graphs with a nontrivial minimum cut.

The input is split by a nontrivial minimum edge-cut into two sides G1 and
G2. An anchor vertex is picked in each side (an interior vertex with at
most two neighbours on the cut boundary). The construction then runs in
two stages:

* stage 1 colors the closed neighbourhood of the G1 anchor with every
  color and makes ``x_1..x_{d//2}`` color-dominating, one bipartite
  matching (vertices vs. missing colors) per ``x_i``;
* stage 2 does the same on G2 around the second anchor for the remaining
  colors, using neighbours ``z_i`` whose second neighbourhood touches the
  G1 boundary at most once.

Everything left uncolored is finished greedily. Every structural fact the
argument relies on is re-checked while running; a violation raises
:class:`ConstructionFailure` with the partial trace attached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from bchrome.coloring import (
    BCertificate,
    Coloring,
    NotBColoringError,
    certify_b_coloring,
    greedy_extend,
    is_dominating,
    is_proper,
)
from bchrome.connectivity import (
    ComponentDecomposition,
    EdgeCut,
    component_size_check,
    decompose_by_cut,
    find_nontrivial_min_cut,
)
from bchrome.graph import Graph, has_four_cycle, is_connected, regular_degree
from bchrome.matching import (
    BipartiteInstance,
    PerfectMatchingError,
    lemma2_hypotheses_hold,
    perfect_matching_or_fail,
)


class PreconditionError(ValueError):
    reason = "precondition"


class NotRegularError(PreconditionError):
    reason = "not-regular"


class DisconnectedError(PreconditionError):
    reason = "disconnected"


class DegreeTooSmallError(PreconditionError):
    reason = "degree-below-4"


class HasFourCycleError(PreconditionError):
    reason = "contains-4-cycle"


class SuperEdgeConnectedError(PreconditionError):
    reason = "super-edge-connected"


class AnchorNotFoundError(RuntimeError):
    pass


class ConstructionFailure(RuntimeError):
    def __init__(self, message: str, trace: "ConstructionTrace") -> None:
        super().__init__(message)
        self.trace = trace


@dataclass
class StageOneStep:
    index: int
    x: int
    vertices: list[int]
    saturated: list[int]
    colors: list[int]
    instance: BipartiteInstance
    assignment: dict[int, int]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "x": self.x,
            "V": self.vertices,
            "S": self.saturated,
            "C": self.colors,
            "instance": self.instance.to_json(),
            "assignment": _pairs(self.assignment),
        }


@dataclass
class StageTwoStep:
    index: int
    z: int
    vertices: list[int]
    saturated: list[int]
    colors: list[int]
    u_star: Optional[int]
    v_star: Optional[int]
    instance: BipartiteInstance
    assignment: dict[int, int]

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "z": self.z,
            "V": self.vertices,
            "S": self.saturated,
            "C": self.colors,
            "u_star": self.u_star,
            "v_star": self.v_star,
            "instance": self.instance.to_json(),
            "assignment": _pairs(self.assignment),
        }


@dataclass
class ConstructionTrace:
    d: int
    cut: Optional[EdgeCut] = None
    decomposition: Optional[ComponentDecomposition] = None
    anchors: tuple[int, ...] = ()
    x_order: list[int] = field(default_factory=list)
    stage1_seed: dict[int, int] = field(default_factory=dict)
    stage1_steps: list[StageOneStep] = field(default_factory=list)
    y_order: list[tuple[int, int]] = field(default_factory=list)
    z_list: list[int] = field(default_factory=list)
    stage2_seed: dict[int, int] = field(default_factory=dict)
    stage2_steps: list[StageTwoStep] = field(default_factory=list)
    greedy_order: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "cut_edges": self.cut.sorted_edges() if self.cut else None,
            "decomposition": self.decomposition.to_json() if self.decomposition else None,
            "anchors": list(self.anchors),
            "x_order": self.x_order,
            "stage1_seed": _pairs(self.stage1_seed),
            "stage1_steps": [s.to_json() for s in self.stage1_steps],
            "y_order": [{"y": y, "e_y": e} for y, e in self.y_order],
            "z_list": self.z_list,
            "stage2_seed": _pairs(self.stage2_seed),
            "stage2_steps": [s.to_json() for s in self.stage2_steps],
            "greedy_order": self.greedy_order,
        }


def _pairs(assignment: dict[int, int]) -> list[list[int]]:
    return [[v, c] for v, c in sorted(assignment.items())]


def find_anchor(g: Graph, component: Iterable[int], boundary: Iterable[int]) -> int:
    """Interior vertex of ``component`` with the fewest (at most two) boundary neighbours.

    Ties go to the smallest label.
    """
    border = frozenset(boundary)
    best: Optional[tuple[int, int]] = None
    for v in sorted(component):
        if v in border:
            continue
        key = (len(g.neighbor_set(v) & border), v)
        if best is None or key < best:
            best = key
    if best is None or best[0] > 2:
        raise AnchorNotFoundError(
            f"no interior vertex with at most 2 boundary neighbours "
            f"(component size {len(list(component))}, boundary {sorted(border)}, best {best})"
        )
    return best[1]


def check_preconditions(g: Graph) -> tuple[int, EdgeCut]:
    """Validate the theorem's hypotheses; return ``(d, nontrivial minimum cut)``."""
    d = regular_degree(g)
    if d is None:
        raise NotRegularError("graph is not regular")
    if not is_connected(g):
        raise DisconnectedError("graph is disconnected")
    if has_four_cycle(g):
        raise HasFourCycleError("graph contains a 4-cycle")
    cut = find_nontrivial_min_cut(g, d) if g.n >= 4 and d >= 1 else None
    if cut is None and d >= 1:
        raise SuperEdgeConnectedError("graph is super-edge-connected")
    if d < 4:
        raise DegreeTooSmallError(f"construction needs d >= 4, got d={d}")
    return d, cut


def _match_into(
    g: Graph,
    colors: dict[int, int],
    vertices: list[int],
    palette: list[int],
    saturated: frozenset[int],
    u_star: Optional[int] = None,
    v_star: Optional[int] = None,
) -> BipartiteInstance:
    edges = []
    for i, v in enumerate(vertices):
        blocked = {colors[w] for w in g.neighbors(v) if w in saturated and w in colors}
        edges.extend((i, j) for j, c in enumerate(palette) if c not in blocked)
    return BipartiteInstance.build(vertices, palette, edges, u_star, v_star)


def construct_bcoloring(g: Graph) -> tuple[Coloring, BCertificate, ConstructionTrace]:
    d, cut = check_preconditions(g)
    trace = ConstructionTrace(d=d, cut=cut)

    def fail(message: str) -> ConstructionFailure:
        return ConstructionFailure(message, trace)

    decomposition = decompose_by_cut(g, cut)
    trace.decomposition = decomposition
    if not component_size_check(g, d, decomposition):
        sizes = [len(c) for c in decomposition.components]
        raise fail(f"component smaller than d+4={d + 4}: sizes {sizes}")
    comp1, comp2 = decomposition.components[0], decomposition.components[1]
    A1, A2 = decomposition.boundary[0], decomposition.boundary[1]
    try:
        a1 = find_anchor(g, comp1, A1)
        a2 = find_anchor(g, comp2, A2)
    except AnchorNotFoundError as exc:
        raise fail(str(exc)) from exc
    trace.anchors = (a1, a2)

    colors: dict[int, int] = {}

    def paint(assignment: dict[int, int]) -> None:
        for v, c in assignment.items():
            if v in colors:
                raise fail(f"vertex {v} colored twice")
            colors[v] = c
        if not is_proper(g, Coloring(colors, d + 1)):
            raise fail("partial coloring became improper")

    # stage 1 seed
    N1 = g.neighbor_set(a1)
    closed1 = N1 | {a1}
    x_order = sorted(N1 - A1)
    trace.x_order = x_order
    p = len(x_order)
    mid = (d + 2) // 2
    seed1 = {a1: 1}
    seed1.update({x: i + 2 for i, x in enumerate(x_order)})
    seed1.update(zip(sorted(N1 & A1), range(p + 2, d + 2)))
    N2 = g.neighbor_set(a2)
    seed1.update(zip(sorted(N2 & A2), (1, mid)))
    trace.stage1_seed = seed1
    paint(seed1)

    # stage 1: make x_1..x_{d//2} dominating
    used_v: set[int] = set()
    saturated = set(closed1) | (N2 & A2)
    for i in range(1, d // 2 + 1):
        x = x_order[i - 1]
        V = sorted(g.neighbor_set(x) - closed1)
        if used_v.intersection(V):
            raise fail(f"stage 1: V_{i} meets an earlier V_j")
        used_v.update(V)
        seen = {colors[x]} | {colors[w] for w in g.neighbor_set(x) & N1}
        C = sorted(set(range(2, d + 2)) - seen)
        if len(V) != len(C) or len(V) not in (d - 1, d - 2):
            raise fail(f"stage 1: |V_{i}|={len(V)}, |C_{i}|={len(C)} for d={d}")
        saturated.update(V)
        S = frozenset(saturated)
        inst = _match_into(g, colors, V, C, S)
        if not lemma2_hypotheses_hold(inst):
            raise fail(f"stage 1: H_{i} violates the degree hypotheses")
        try:
            matching = perfect_matching_or_fail(inst)
        except PerfectMatchingError as exc:
            raise fail(f"stage 1: H_{i} has no perfect matching ({exc})") from exc
        assignment = {V[u]: C[c] for u, c in matching.pairs}
        paint(assignment)
        trace.stage1_steps.append(StageOneStep(i, x, V, sorted(S), C, inst, assignment))
        for v in [a1] + x_order[:i]:
            if not is_dominating(g, colors, v, d + 1):
                raise fail(f"stage 1: vertex {v} not dominating after step {i}")
    stage1_saturated = frozenset(saturated)

    # stage 2: pick z_i whose outer neighbourhood touches A1 at most once
    closed2 = N2 | {a2}
    ys = sorted(N2 - A2)
    used_w: set[int] = set()
    e_y: dict[int, int] = {}
    for y in ys:
        W = g.neighbor_set(y) - closed2
        if used_w & W:
            raise fail(f"stage 2: W for y={y} meets an earlier W")
        used_w |= W
        e_y[y] = sum(len(g.neighbor_set(s) & A1) for s in W)
    order = sorted(ys, key=lambda y: (-e_y[y], y))
    trace.y_order = [(y, e_y[y]) for y in order]
    r = (d - 1) // 2
    zs = order[len(order) - r:]
    trace.z_list = zs
    if any(e_y[z] > 1 for z in zs):
        raise fail(f"stage 2: some z has e_z > 1: {[(z, e_y[z]) for z in zs]}")

    seed2 = {a2: d + 1}
    seed2.update({z: mid + i for i, z in enumerate(zs, start=1)})
    rest = sorted(N2 - A2 - set(zs))
    present = {colors[v] for v in N2 & A2} | set(seed2.values())
    spare = sorted(set(range(1, d + 2)) - present)
    if len(spare) != len(rest):
        raise fail(f"stage 2: {len(rest)} neighbours of a2 left for {len(spare)} colors")
    seed2.update(zip(rest, spare))
    trace.stage2_seed = seed2
    paint(seed2)
    if {colors[v] for v in closed2} != set(range(1, d + 2)):
        raise fail("stage 2: closed neighbourhood of a2 misses a color")

    comp1_set = frozenset(comp1)
    used_v2: set[int] = set()
    saturated2 = set(closed2) | stage1_saturated
    for i, z in enumerate(zs, start=1):
        V = sorted(g.neighbor_set(z) - closed2)
        if used_v2.intersection(V):
            raise fail(f"stage 2: V'_{i} meets an earlier V'_j")
        used_v2.update(V)
        seen = {colors[z]} | {colors[w] for w in g.neighbor_set(z) & N2}
        C = sorted(set(range(1, d + 1)) - seen)
        if len(V) != len(C) or len(V) not in (d - 1, d - 2):
            raise fail(f"stage 2: |V'_{i}|={len(V)}, |C'_{i}|={len(C)} for d={d}")
        saturated2.update(V)
        S = frozenset(saturated2)
        crossing = [v for v in V if g.neighbor_set(v) & comp1_set]
        if len(crossing) > 1:
            raise fail(f"stage 2: several vertices of V'_{i} reach G1: {crossing}")
        hit = {
            colors[w]
            for v in crossing
            for w in g.neighbor_set(v) & comp1_set
            if w in S and w in colors and colors[w] in C
        }
        u_star = V.index(crossing[0]) if crossing else None
        v_star = C.index(hit.pop()) if hit else None
        inst = _match_into(g, colors, V, C, S, u_star, v_star)
        if not lemma2_hypotheses_hold(inst):
            raise fail(f"stage 2: H'_{i} violates the degree hypotheses")
        try:
            matching = perfect_matching_or_fail(inst)
        except PerfectMatchingError as exc:
            raise fail(f"stage 2: H'_{i} has no perfect matching ({exc})") from exc
        assignment = {V[u]: C[c] for u, c in matching.pairs}
        paint(assignment)
        trace.stage2_steps.append(
            StageTwoStep(i, z, V, sorted(S), C, u_star, v_star, inst, assignment)
        )
        if not is_dominating(g, colors, z, d + 1):
            raise fail(f"stage 2: z_{i}={z} not dominating")

    trace.greedy_order = [v for v in g.vertices() if v not in colors]
    coloring = greedy_extend(g, Coloring(dict(colors), d + 1), d + 1)
    if coloring.colors_used() != set(range(1, d + 2)):
        raise fail("final coloring does not use all d+1 colors")
    try:
        certificate = certify_b_coloring(g, coloring)
    except NotBColoringError as exc:
        raise fail(f"final coloring is not a b-coloring: {exc}") from exc
    return coloring, certificate, trace


def replay_trace(g: Graph, trace: ConstructionTrace) -> Coloring:
    """Rebuild the final coloring from the recorded seeds and matchings."""
    colors: dict[int, int] = {}
    for part in (
        [trace.stage1_seed],
        [s.assignment for s in trace.stage1_steps],
        [trace.stage2_seed],
        [s.assignment for s in trace.stage2_steps],
    ):
        for assignment in part:
            colors.update(assignment)
    for v in trace.greedy_order:
        taken = {colors[w] for w in g.neighbors(v) if w in colors}
        colors[v] = min(c for c in range(1, trace.d + 2) if c not in taken)
    return Coloring(colors, trace.d + 1)
