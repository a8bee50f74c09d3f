"""Polynomial computation of the 2-dispersion number.

An optimal 2-dispersed set can always be brought into canonical form
(vertices plus edge midpoints) whose shape follows the maximum-matching
decomposition: even components contribute perfect matchings, odd components
near-perfect matchings, and the only real decision is which singleton
inessential vertices to keep as vertex points.  That decision minimizes
``|neighbourhood(T)| - |T|``, which reduces to a minimum s-t cut in a small
directed auxiliary network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Graph, WitnessSet, is_dispersed, midpoint, vertex_point, vicinity
from .errors import InternalConsistencyError
from .matching import (
    EGDecomposition,
    component_split,
    edmonds_gallai,
    near_perfect_matching,
)

__all__ = [
    "CanonicalWitness",
    "CutInstance",
    "surplus",
    "min_surplus",
    "disp2",
    "validate_canonical",
]


@dataclass(frozen=True)
class CanonicalWitness:
    """A 2-dispersed set in canonical form: vertex points plus edge midpoints."""

    vertex_points: frozenset[int]
    edge_midpoints: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertex_points) + len(self.edge_midpoints)

    def to_witness_set(self, g: Graph) -> WitnessSet:
        points = [vertex_point(g, v) for v in self.vertex_points]
        points.extend(midpoint(g, e) for e in self.edge_midpoints)
        return WitnessSet.build(g, points, Fraction(2))


@dataclass(frozen=True)
class CutInstance:
    """Bipartite adjacency data for the vertex-selection subproblem."""

    left: frozenset[int]
    right: frozenset[int]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for x, y in self.arcs:
            if x not in self.left or y not in self.right:
                raise ValueError(f"arc ({x}, {y}) does not run left to right")


def surplus(inst: CutInstance, subset: Iterable[int]) -> int:
    """``|neighbourhood(subset)| - |subset|`` for a subset of the left side."""
    chosen = frozenset(subset)
    if not chosen <= inst.left:
        raise ValueError("subset must lie within the left side")
    hit = {y for x, y in inst.arcs if x in chosen}
    return len(hit) - len(chosen)


class _FlowNetwork:
    """Tiny Dinic max-flow over integer capacities."""

    def __init__(self, n: int):
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add_arc(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * len(self.adj)
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for to, cap, _ in self.adj[v]:
                if cap > 0 and level[to] < 0:
                    level[to] = level[v] + 1
                    queue.append(to)
        return level if level[t] >= 0 else None

    def _push(self, v: int, t: int, pushed: int, level: list[int], it: list[int]) -> int:
        if v == t:
            return pushed
        while it[v] < len(self.adj[v]):
            arc = self.adj[v][it[v]]
            to, cap, rev = arc
            if cap > 0 and level[to] == level[v] + 1:
                got = self._push(to, t, min(pushed, cap), level, it)
                if got > 0:
                    arc[1] -= got
                    self.adj[to][rev][1] += got
                    return got
            it[v] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            it = [0] * len(self.adj)
            while True:
                pushed = self._push(s, t, 1 << 60, level, it)
                if pushed == 0:
                    break
                flow += pushed

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for to, cap, _ in self.adj[v]:
                if cap > 0 and to not in seen:
                    seen.add(to)
                    queue.append(to)
        return seen


def min_surplus(inst: CutInstance) -> tuple[int, frozenset[int]]:
    """Minimum of ``|neighbourhood(T)| - |T|`` over subsets T of the left side.

    Solved as a minimum s-t cut: unit arcs from the source into the left
    side and from the right side into the sink, effectively-infinite arcs
    across.  The minimizing T is the left part of the source side of the
    canonical (residual-reachable) minimum cut.  The empty set gives 0, so
    the result is never positive.
    """
    left = sorted(inst.left)
    right = sorted(inst.right)
    if not left:
        return 0, frozenset()
    node = {("L", x): 2 + i for i, x in enumerate(left)}
    node.update({("R", y): 2 + len(left) + i for i, y in enumerate(right)})
    infinite = len(left) + len(right) + 1  # exceeds any finite cut
    net = _FlowNetwork(2 + len(left) + len(right))
    for x in left:
        net.add_arc(0, node[("L", x)], 1)
    for y in right:
        net.add_arc(node[("R", y)], 1, 1)
    for x, y in sorted(inst.arcs):
        net.add_arc(node[("L", x)], node[("R", y)], infinite)
    cut = net.max_flow(0, 1)
    reach = net.residual_reachable(0)
    chosen = frozenset(x for x in left if node[("L", x)] in reach)
    value = cut - len(left)
    if value != surplus(inst, chosen):
        raise InternalConsistencyError("cut value does not match its minimizer")
    return value, chosen


def disp2(g: Graph) -> tuple[int, CanonicalWitness]:
    """The 2-dispersion number together with an optimal canonical witness."""
    if g.vertex_count == 1:
        return 1, CanonicalWitness(frozenset({0}), frozenset())

    dec = edmonds_gallai(g)
    arcs = set()
    for x in dec.singletons:
        for y in g.adjacency[x]:
            if y not in dec.separator:
                raise InternalConsistencyError(
                    f"neighbour {y} of singleton {x} is outside the separator"
                )
            arcs.add((x, y))
    inst = CutInstance(dec.singletons, dec.separator, frozenset(arcs))
    best_surplus, chosen = min_surplus(inst)

    value = (
        len(dec.remainder) // 2
        + sum((len(c) - 1) // 2 for c in dec.odd_components)
        + len(dec.separator)
        - best_surplus
    )

    vertex_points = set(chosen)
    midpoints: set[int] = set()
    hit = {y for x, y in arcs if x in chosen}
    for y in sorted(dec.separator - hit):
        e = g.edge_index(y, dec.partner[y])
        if e is None:
            raise InternalConsistencyError("partner pair is not an edge")
        midpoints.add(e)
    for comp in dec.odd_components:
        incoming = [x for x in dec.partner.values() if x in comp]
        missed = incoming[0] if incoming else min(comp)
        midpoints |= near_perfect_matching(g, comp, missed).edges
    for e in dec.base_matching.edges:
        u, v = g.edges[e]
        if u in dec.remainder and v in dec.remainder:
            midpoints.add(e)

    witness = CanonicalWitness(frozenset(vertex_points), frozenset(midpoints))
    ws = witness.to_witness_set(g)
    if len(ws) != value or not is_dispersed(g, ws.points, Fraction(2)):
        raise InternalConsistencyError("assembled witness does not match the value")
    return value, witness


def validate_canonical(g: Graph, w: CanonicalWitness, dec: EGDecomposition) -> bool:
    """Check the structural properties an optimal canonical witness satisfies.

    P1: the midpoint edges induce a near-perfect matching in every odd
    inessential component of size >= 3.  P2: each separator vertex sees the
    witness only through the midpoint of a single edge into the inessential
    set, if at all.  P3: the midpoint edges induce a perfect matching in
    every remainder component.
    """
    points = frozenset(w.to_witness_set(g).points)
    remainder_components = tuple(component_split(g.adjacency, dec.remainder))

    for comp in dec.odd_components:
        if not _induces_matching(g, w.edge_midpoints, comp, len(comp) - 1):
            return False

    for y in dec.separator:
        hits = vicinity(g, y) & points
        if not hits:
            continue
        if len(hits) != 1:
            return False
        (hit,) = hits
        if hit.offset != Fraction(1, 2):
            return False
        u, v = g.edges[hit.edge_index]
        if y not in (u, v):
            return False
        other = u if v == y else v
        if other not in dec.inessential:
            return False

    for comp in remainder_components:
        if not _induces_matching(g, w.edge_midpoints, comp, len(comp)):
            return False
    return True


def _induces_matching(
    g: Graph, midpoint_edges: frozenset[int], comp: frozenset[int], want_covered: int
) -> bool:
    """Do the midpoint edges inside `comp` form a matching covering
    exactly `want_covered` of its vertices?"""
    covered: set[int] = set()
    for e in midpoint_edges:
        u, v = g.edges[e]
        if u in comp and v in comp:
            if u in covered or v in covered:
                return False
            covered.update((u, v))
    return len(covered) == want_covered
