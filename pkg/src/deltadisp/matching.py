"""Maximum matching in general graphs and the structure of maximum matchings.

The matching search is a blossom-contracting augmenting-path algorithm
(O(V^3)); the decomposition classifies vertices by whether some maximum
matching misses them and exposes the structural guarantees every maximum
matching then satisfies (odd factor-critical components, perfectly matched
even components, and the separator matched into distinct odd components).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Graph
from .errors import InternalConsistencyError

__all__ = [
    "Matching",
    "component_split",
    "EGDecomposition",
    "maximum_matching",
    "matching_number",
    "edmonds_gallai",
    "near_perfect_matching",
]


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges, held as edge indices."""

    edges: frozenset[int]

    def __len__(self) -> int:
        return len(self.edges)

    def pairs(self, g: Graph) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(g.edges[e] for e in self.edges))

    def cover_map(self, g: Graph) -> dict[int, int]:
        """Vertex -> matched partner, for covered vertices only."""
        cover: dict[int, int] = {}
        for e in self.edges:
            u, v = g.edges[e]
            if u in cover or v in cover:
                raise ValueError("edges share a vertex; not a matching")
            cover[u] = v
            cover[v] = u
        return cover


def _blossom(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum cardinality matching; returns partner per vertex (-1 free)."""
    match = [-1] * n
    # greedy seed halves the number of augmenting searches
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break

    parent = [-1] * n
    base = list(range(n))

    def lowest_common_base(a: int, b: int) -> int:
        seen = [False] * n
        u = a
        while True:
            u = base[u]
            seen[u] = True
            if match[u] == -1:
                break
            u = parent[match[u]]
        v = b
        while True:
            v = base[v]
            if seen[v]:
                return v
            v = parent[match[v]]

    def mark_path(v: int, stem: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stem:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[child]

    def find_augmenting(root: int) -> int:
        nonlocal parent, base
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom down to its base
                    stem = lowest_common_base(v, to)
                    in_blossom = [False] * n
                    mark_path(v, stem, to, in_blossom)
                    mark_path(to, stem, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = stem
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            exposed = find_augmenting(v)
            if exposed == -1:
                continue
            while exposed != -1:
                prev = parent[exposed]
                nxt = match[prev]
                match[exposed] = prev
                match[prev] = exposed
                exposed = nxt
    return match


def _pairs_to_matching(g: Graph, match: Sequence[int]) -> Matching:
    edges = set()
    for v, u in enumerate(match):
        if u > v:
            e = g.edge_index(v, u)
            if e is None:
                raise InternalConsistencyError(f"matched pair ({v}, {u}) is not an edge")
            edges.add(e)
    return Matching(frozenset(edges))


def maximum_matching(g: Graph) -> Matching:
    """A maximum cardinality matching of g."""
    return _pairs_to_matching(g, _blossom(g.vertex_count, g.adjacency))


def matching_number(g: Graph) -> int:
    """Size of a maximum cardinality matching."""
    return len(maximum_matching(g))


def _matching_number_without(g: Graph, banned: int) -> int:
    adj = [
        [] if v == banned else [u for u in nbrs if u != banned]
        for v, nbrs in enumerate(g.adjacency)
    ]
    match = _blossom(g.vertex_count, adj)
    return sum(1 for partner in match if partner != -1) // 2


def component_split(adjacency: Sequence[Sequence[int]], inside: frozenset[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph induced by `inside`."""
    remaining = set(inside)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for x in adjacency[w]:
                if x in remaining and x not in comp:
                    comp.add(x)
                    queue.append(x)
        remaining -= comp
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class EGDecomposition:
    """Partition of the vertices by maximum-matching structure.

    ``inessential`` holds the vertices missed by some maximum matching; the
    ``separator`` is its outside neighbourhood; the ``remainder`` is
    everything else.  The inessential components are split into singletons
    and odd components of size >= 3, and ``partner`` maps each separator
    vertex to its matched inessential vertex in ``base_matching``.
    """

    inessential: frozenset[int]
    separator: frozenset[int]
    remainder: frozenset[int]
    singletons: frozenset[int]
    odd_components: tuple[frozenset[int], ...]
    partner: Mapping[int, int]
    base_matching: Matching


def edmonds_gallai(g: Graph) -> EGDecomposition:
    """Compute the decomposition and verify its structural guarantees.

    The inessential set is found by the definitional test (one matching run
    per vertex); the remaining structure is read off one maximum matching.
    Any violated guarantee raises InternalConsistencyError rather than
    passing silently.
    """
    n = g.vertex_count
    base = maximum_matching(g)
    size = len(base)
    inessential = frozenset(
        v for v in range(n) if _matching_number_without(g, v) == size
    )
    adjacency = g.adjacency
    separator = frozenset(
        u for v in inessential for u in adjacency[v]
    ) - inessential
    remainder = frozenset(range(n)) - inessential - separator

    comps = component_split(adjacency, inessential)
    for comp in comps:
        if len(comp) % 2 == 0:
            raise InternalConsistencyError(
                f"even-sized inessential component {sorted(comp)}"
            )
    singletons = frozenset(next(iter(c)) for c in comps if len(c) == 1)
    odd_components = tuple(
        sorted((c for c in comps if len(c) >= 3), key=min)
    )

    cover = base.cover_map(g)
    partner: dict[int, int] = {}
    for y in sorted(separator):
        x = cover.get(y)
        if x is None or x not in inessential:
            raise InternalConsistencyError(
                f"separator vertex {y} is not matched into the inessential set"
            )
        partner[y] = x
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    hit_components = [comp_of[x] for x in partner.values()]
    if len(set(hit_components)) != len(hit_components):
        raise InternalConsistencyError(
            "separator vertices matched into a shared inessential component"
        )

    for comp in component_split(adjacency, remainder):
        if len(comp) % 2:
            raise InternalConsistencyError(f"odd remainder component {sorted(comp)}")
        for v in comp:
            if cover.get(v) not in comp:
                raise InternalConsistencyError(
                    f"remainder component {sorted(comp)} is not perfectly matched"
                )
    for comp in comps:
        missed = [v for v in comp if cover.get(v) not in comp]
        if len(missed) != 1:
            raise InternalConsistencyError(
                f"inessential component {sorted(comp)} not near-perfectly matched"
            )
        outside = cover.get(missed[0])
        if outside is not None and outside not in separator:
            raise InternalConsistencyError(
                f"vertex {missed[0]} matched outside separator"
            )

    return EGDecomposition(
        inessential=inessential,
        separator=separator,
        remainder=remainder,
        singletons=singletons,
        odd_components=odd_components,
        partner=partner,
        base_matching=base,
    )


def near_perfect_matching(g: Graph, component: Iterable[int], missed: int) -> Matching:
    """A matching covering every vertex of `component` except `missed`.

    The component must be factor-critical (as the odd components of the
    decomposition are); failure to cover signals an internal bug.
    """
    comp = frozenset(component)
    if missed not in comp:
        raise ValueError(f"vertex {missed} is not in the component")
    verts = sorted(comp - {missed})
    index = {v: i for i, v in enumerate(verts)}
    adj = [[index[u] for u in g.adjacency[v] if u in index] for v in verts]
    match = _blossom(len(verts), adj)
    if any(partner == -1 for partner in match):
        raise InternalConsistencyError(
            f"component {sorted(comp)} has no near-perfect matching missing {missed}"
        )
    edges = set()
    for i, j in enumerate(match):
        if j > i:
            e = g.edge_index(verts[i], verts[j])
            if e is None:
                raise InternalConsistencyError("matched pair is not an edge")
            edges.add(e)
    return Matching(frozenset(edges))
