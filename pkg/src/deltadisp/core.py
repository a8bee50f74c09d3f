"""Graph and point-space model for exact dispersion computations.

A graph here is a finite connected simple undirected graph whose edges all
have unit length.  Facilities may sit anywhere on an edge, so alongside the
usual vertex/edge structure this module models the continuum of edge points
with exact rational offsets: the shortest-path metric between points, edge
subdivision, vertex vicinities, and the dispersion predicate that every
solver in the suite is measured against.

All values are immutable and all arithmetic is exact (`fractions.Fraction`);
no floats appear anywhere on the solver path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    MalformedLineError,
    SelfLoopError,
    VertexRangeError,
)

#: Exact rational scalar used for offsets, spacings and distances.
Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce to an exact rational, refusing floats (they round silently)."""
    if isinstance(value, float):
        raise TypeError(
            f"refusing to convert float {value!r}; pass a Fraction, an int, "
            f"or a string like '2/3'"
        )
    return Fraction(value)


__all__ = [
    "Rational",
    "as_rational",
    "Graph",
    "Point",
    "WitnessSet",
    "SubdivisionMap",
    "parse_graph",
    "format_graph",
    "hop_distances",
    "point_distance",
    "subdivide",
    "is_dispersed",
    "vicinity",
    "vertex_point",
    "normalize_point",
    "point_as_vertex",
    "midpoint",
    "format_witness",
    "parse_witness",
]


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        w = queue.popleft()
        for x in nbrs[w]:
            if not seen[x]:
                seen[x] = True
                count += 1
                queue.append(x)
    return count == n


@dataclass(frozen=True)
class Graph:
    """A connected simple undirected graph with unit-length edges.

    Edges keep their position in ``edges``, so an edge index is a stable
    handle; points on edges refer to edges by this index.  Construction
    validates simplicity and connectivity; use :func:`parse_graph` for
    line-aware errors on text input.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        n = self.vertex_count
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        if not _connected(n, self.edges):
            raise ValueError("graph is not connected")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_tree(self) -> bool:
        return len(self.edges) == self.vertex_count - 1

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour lists, indexed by vertex."""
        nbrs: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _edge_ids(self) -> dict[tuple[int, int], int]:
        ids: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(self.edges):
            ids[(u, v)] = i
            ids[(v, u)] = i
        return ids

    def edge_index(self, u: int, v: int) -> int | None:
        """Index of the edge joining u and v, or None if absent."""
        return self._edge_ids.get((u, v))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def hop_table(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs vertex distances, one BFS per vertex (unit edges)."""
        n = self.vertex_count
        adjacency = self.adjacency
        rows = []
        for s in range(n):
            dist = [-1] * n
            dist[s] = 0
            queue = deque([s])
            while queue:
                w = queue.popleft()
                for x in adjacency[w]:
                    if dist[x] < 0:
                        dist[x] = dist[w] + 1
                        queue.append(x)
            rows.append(tuple(dist))
        return tuple(rows)


def hop_distances(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Symmetric table of vertex-to-vertex shortest path lengths."""
    return g.hop_table


@dataclass(frozen=True, order=True)
class Point:
    """A location on a graph: an edge plus an offset from its first endpoint.

    Offset 0 is the stored first endpoint, offset 1 the second.  The
    canonical form of a vertex is anchored to the lowest-indexed incident
    edge (see :func:`normalize_point`), so normalized points compare by
    value.  The lone vertex of an edgeless single-vertex graph is encoded
    as ``Point(-1, 0)``.
    """

    edge_index: int
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", as_rational(self.offset))


def vertex_point(g: Graph, v: int) -> Point:
    """The canonical point sitting at vertex v."""
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    incident = g.incident_edges[v]
    if not incident:
        # only possible for the single-vertex graph
        return Point(-1, Fraction(0))
    e = incident[0]
    u, _ = g.edges[e]
    return Point(e, Fraction(0) if u == v else Fraction(1))


def midpoint(g: Graph, e: int) -> Point:
    """The midpoint of edge e (already canonical)."""
    if not 0 <= e < g.edge_count:
        raise ValueError(f"invalid edge index {e}")
    return Point(e, Fraction(1, 2))


def normalize_point(g: Graph, p: Point) -> Point:
    """Canonical form of p: endpoint offsets become vertex points."""
    if p.edge_index == -1:
        if g.edge_count or p.offset != 0:
            raise ValueError("edgeless point form is only valid for a single-vertex graph")
        return Point(-1, Fraction(0))
    if not 0 <= p.edge_index < g.edge_count:
        raise ValueError(f"invalid edge index {p.edge_index}")
    off = p.offset
    if off < 0 or off > 1:
        raise ValueError(f"offset {off} outside [0, 1]")
    if off == 0:
        return vertex_point(g, g.edges[p.edge_index][0])
    if off == 1:
        return vertex_point(g, g.edges[p.edge_index][1])
    return p


def point_as_vertex(g: Graph, p: Point) -> int | None:
    """Vertex id of a normalized point, or None for an interior point."""
    if p.edge_index == -1:
        return 0
    if p.offset == 0:
        return g.edges[p.edge_index][0]
    if p.offset == 1:
        return g.edges[p.edge_index][1]
    return None


def point_distance(g: Graph, p: Point, q: Point) -> Fraction:
    """Shortest-path distance between two points of the graph.

    The minimum is taken over the four endpoint routes (leave p's edge at
    either end, enter q's edge at either end, with the vertex hop metric in
    between) and, when both points lie on the same edge, the direct
    along-edge distance.
    """
    p = normalize_point(g, p)
    q = normalize_point(g, q)
    if p == q:
        return Fraction(0)
    hops = g.hop_table
    pa, pb = g.edges[p.edge_index]
    qa, qb = g.edges[q.edge_index]
    dpa = p.offset
    dpb = 1 - p.offset
    dqa = q.offset
    dqb = 1 - q.offset
    best = min(
        dpa + hops[pa][qa] + dqa,
        dpa + hops[pa][qb] + dqb,
        dpb + hops[pb][qa] + dqa,
        dpb + hops[pb][qb] + dqb,
    )
    if p.edge_index == q.edge_index:
        direct = abs(p.offset - q.offset)
        if direct < best:
            best = direct
    return best


def is_dispersed(g: Graph, points: Iterable[Point], delta: Fraction) -> bool:
    """True iff all pairs of distinct normalized points are >= delta apart."""
    norm = sorted({normalize_point(g, p) for p in points})
    delta = as_rational(delta)
    for i in range(len(norm)):
        for j in range(i + 1, len(norm)):
            if point_distance(g, norm[i], norm[j]) < delta:
                return False
    return True


def vicinity(g: Graph, v: int) -> frozenset[Point]:
    """Vertex v together with the midpoints of all its incident edges."""
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    pts = {vertex_point(g, v)}
    for e in g.incident_edges[v]:
        pts.add(midpoint(g, e))
    return frozenset(pts)


@dataclass(frozen=True)
class WitnessSet:
    """A finite set of points claimed to be delta-dispersed."""

    points: tuple[Point, ...]
    delta: Fraction

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    @classmethod
    def build(cls, g: Graph, points: Iterable[Point], delta: Fraction) -> "WitnessSet":
        """Normalize, sort and deduplicate-check the given points."""
        norm = [normalize_point(g, p) for p in points]
        uniq = sorted(set(norm))
        if len(uniq) != len(norm):
            raise ValueError("witness points are not pairwise distinct")
        return cls(tuple(uniq), as_rational(delta))


# ---------------------------------------------------------------------------
# Edge subdivision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionMap:
    """Invertible correspondence between points of a graph and its subdivision.

    A point at offset t from u on an original edge maps to the point at
    distance ``factor * t`` from u along the subdivided chain of that edge.
    """

    source: Graph
    target: Graph
    factor: int

    def _chain_vertex(self, edge: int, step: int) -> int:
        # step in 1..factor-1 names the step-th internal chain vertex
        n = self.source.vertex_count
        return n + edge * (self.factor - 1) + (step - 1)

    def forward(self, p: Point) -> Point:
        p = normalize_point(self.source, p)
        if p.edge_index == -1:
            return p
        c = self.factor
        position = c * p.offset
        if position.denominator == 1:
            step = int(position)
            u, v = self.source.edges[p.edge_index]
            if step == 0:
                return vertex_point(self.target, u)
            if step == c:
                return vertex_point(self.target, v)
            return vertex_point(self.target, self._chain_vertex(p.edge_index, step))
        segment = position.numerator // position.denominator
        return Point(p.edge_index * c + segment, position - segment)

    def inverse(self, p: Point) -> Point:
        p = normalize_point(self.target, p)
        if p.edge_index == -1:
            return p
        c = self.factor
        n = self.source.vertex_count
        v = point_as_vertex(self.target, p)
        if v is not None:
            if v < n:
                return vertex_point(self.source, v)
            edge, rem = divmod(v - n, c - 1)
            return Point(edge, Fraction(rem + 1, c))
        edge, segment = divmod(p.edge_index, c)
        return normalize_point(self.source, Point(edge, (segment + p.offset) / c))


def subdivide(g: Graph, c: int) -> tuple[Graph, SubdivisionMap]:
    """Replace every edge by a chain of c unit edges.

    Returns the subdivided graph plus the invertible point correspondence.
    ``c == 1`` yields an identical graph and the identity map.
    """
    if c < 1:
        raise ValueError("subdivision factor must be >= 1")
    n = g.vertex_count
    edges: list[tuple[int, int]] = []
    for j, (u, v) in enumerate(g.edges):
        chain = [u] + [n + j * (c - 1) + t for t in range(c - 1)] + [v]
        edges.extend((chain[s], chain[s + 1]) for s in range(c))
    target = Graph(n + (c - 1) * g.edge_count, tuple(edges))
    return target, SubdivisionMap(g, target, c)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the graph file format: first line ``n m``, then m lines ``u v``.

    Vertex ids are 0-based.  Raises a distinct error naming the offending
    line for each failure mode: malformed line, vertex id out of range,
    self-loop, duplicate edge, disconnected graph.
    """
    lines = text.splitlines()
    if not lines or not lines[0].split():
        raise MalformedLineError("expected header 'n m'", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise MalformedLineError("expected header 'n m'", line=1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise MalformedLineError("expected two integers 'n m'", line=1) from None
    if n < 1:
        raise MalformedLineError("vertex count must be positive", line=1)
    if m < 0:
        raise MalformedLineError("edge count must be non-negative", line=1)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for k in range(m):
        lineno = k + 2
        if lineno - 1 >= len(lines):
            raise MalformedLineError("missing edge line", line=lineno)
        parts = lines[lineno - 1].split()
        if len(parts) != 2:
            raise MalformedLineError("expected 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError("expected two integers 'u v'", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex id outside [0, {n})", line=lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", line=lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge ({u}, {v})", line=lineno)
        seen.add(key)
        edges.append((u, v))
    for extra, content in enumerate(lines[m + 1 :], start=m + 2):
        if content.split():
            raise MalformedLineError("unexpected extra line", line=extra)
    if not _connected(n, edges):
        raise DisconnectedGraphError("graph is not connected")
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    out = [f"{g.vertex_count} {g.edge_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def format_witness(g: Graph, ws: WitnessSet) -> str:
    """One line per point: ``e u v num/den`` with the offset taken from u."""
    out = []
    for p in ws.points:
        u, v = (0, 0) if p.edge_index == -1 else g.edges[p.edge_index]
        out.append(f"{p.edge_index} {u} {v} {p.offset.numerator}/{p.offset.denominator}")
    return "\n".join(out) + ("\n" if out else "")


def parse_witness(g: Graph, text: str, delta: Fraction) -> WitnessSet:
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) != 4:
            raise MalformedLineError("expected 'e u v num/den'", line=lineno)
        try:
            e, u, v = int(parts[0]), int(parts[1]), int(parts[2])
            num, _, den = parts[3].partition("/")
            off = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            raise MalformedLineError("expected 'e u v num/den'", line=lineno) from None
        if e == -1:
            if g.edge_count != 0:
                raise MalformedLineError("edgeless point in a graph with edges", line=lineno)
        elif not 0 <= e < g.edge_count:
            raise MalformedLineError(f"invalid edge index {e}", line=lineno)
        elif g.edges[e] != (u, v):
            raise MalformedLineError(
                f"edge {e} is stored as {g.edges[e]}, not ({u}, {v})", line=lineno
            )
        if not 0 <= off <= 1:
            raise MalformedLineError(f"offset {off} outside [0, 1]", line=lineno)
        points.append(Point(e, off))
    return WitnessSet.build(g, points, delta)
