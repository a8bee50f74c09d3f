"""Compact certificates for dispersion lower bounds, verified exactly.

A certificate names the vertices that carry facilities plus, per edge, how
many facilities sit strictly inside it.  Whether some placement with those
counts is delta-dispersed is a linear feasibility question over the
distances from each occupied edge's endpoints to the nearest interior
facility; it is decided exactly over the rationals by Fourier-Motzkin
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import Graph, WitnessSet, as_rational, point_as_vertex
from .errors import MalformedLineError

__all__ = [
    "Certificate",
    "Verdict",
    "extract_certificate",
    "verify_certificate",
    "format_certificate",
    "parse_certificate",
]


@dataclass(frozen=True)
class Certificate:
    """Vertex facilities plus per-edge interior facility counts."""

    vertices: frozenset[int]
    interior_counts: Mapping[int, int]

    def __post_init__(self) -> None:
        counts = {int(e): int(c) for e, c in self.interior_counts.items() if int(c) != 0}
        if any(c < 0 for c in counts.values()):
            raise ValueError("interior counts must be non-negative")
        object.__setattr__(self, "interior_counts", counts)

    @property
    def total(self) -> int:
        return len(self.vertices) + sum(self.interior_counts.values())


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None


def extract_certificate(g: Graph, ws: WitnessSet) -> Certificate:
    """Forget exact offsets: keep vertex hits and per-edge interior counts."""
    vertices: set[int] = set()
    counts: dict[int, int] = {}
    for p in ws.points:
        v = point_as_vertex(g, p)
        if v is not None:
            vertices.add(v)
        else:
            counts[p.edge_index] = counts.get(p.edge_index, 0) + 1
    return Certificate(frozenset(vertices), counts)


def verify_certificate(g: Graph, delta: Fraction, cert: Certificate, k: int) -> Verdict:
    """Accept iff the certificate claims >= k facilities and is realizable.

    Rejection reasons fall into three classes: cardinality shortfall,
    a vertex pair of the certificate closer than delta, or an infeasible
    linear system (reported with the elimination stage that exposed it).
    """
    delta = as_rational(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    for e in cert.interior_counts:
        if not 0 <= e < g.edge_count:
            raise ValueError(f"invalid edge index {e} in certificate")
    for v in cert.vertices:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"invalid vertex id {v} in certificate")

    if cert.total < k:
        return Verdict(False, f"cardinality shortfall: certificate claims {cert.total} < k={k}")

    hops = g.hop_table
    vs = sorted(cert.vertices)
    for i, u in enumerate(vs):
        for w in vs[i + 1 :]:
            if hops[u][w] < delta:
                return Verdict(
                    False,
                    f"vertex pair ({u}, {w}) at distance {hops[u][w]} < {delta}",
                )

    # one point per edge's endpoint side: x measures vertex-to-nearest-interior
    occupied = sorted(cert.interior_counts)
    cap = int(1 / delta) + 1
    for e in occupied:
        if cert.interior_counts[e] > cap:
            return Verdict(
                False,
                f"infeasible system: edge {e} cannot hold {cert.interior_counts[e]} "
                f"points at spacing {delta}",
            )
    variables: list[tuple[int, int]] = []  # (vertex, edge)
    for e in occupied:
        u, v = g.edges[e]
        variables.append((u, e))
        variables.append((v, e))
    var_id = {uv: i for i, uv in enumerate(variables)}
    labels = [f"x({u},{e})" for u, e in variables]
    nvars = len(variables)

    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []

    def add(coeffs: dict[int, Fraction], rhs: Fraction) -> None:
        dense = [Fraction(0)] * nvars
        for idx, c in coeffs.items():
            dense[idx] = c
        rows.append((tuple(dense), Fraction(rhs)))

    one = Fraction(1)
    for e in occupied:
        u, v = g.edges[e]
        xu, xv = var_id[(u, e)], var_id[(v, e)]
        count = cert.interior_counts[e]
        add({xu: -one}, Fraction(0))
        add({xv: -one}, Fraction(0))
        add({xu: one, xv: one}, 1 - (count - 1) * delta)
    for w in cert.vertices:
        for e in occupied:
            for u in g.edges[e]:
                add({var_id[(u, e)]: -one}, hops[u][w] - delta)
    for a_pos, e in enumerate(occupied):
        for f in occupied[a_pos:]:
            if e == f:
                # wrap-around between the two extreme interior points
                if cert.interior_counts[e] >= 2:
                    u, v = g.edges[e]
                    add(
                        {var_id[(u, e)]: -one, var_id[(v, e)]: -one},
                        hops[u][v] - delta,
                    )
                continue
            for u in g.edges[e]:
                for w in g.edges[f]:
                    add(
                        {var_id[(u, e)]: -one, var_id[(w, f)]: -one},
                        hops[u][w] - delta,
                    )

    feasible, stage = fourier_motzkin_feasible(nvars, rows, labels)
    if not feasible:
        return Verdict(False, f"infeasible system ({stage})")
    return Verdict(True)


def fourier_motzkin_feasible(
    nvars: int,
    rows: list[tuple[tuple[Fraction, ...], Fraction]],
    labels: list[str] | None = None,
) -> tuple[bool, str | None]:
    """Exact feasibility of ``coeffs . x <= rhs`` rows over the rationals.

    Eliminates variables in index order; on infeasibility the second
    element names the stage that exposed the contradiction.  Dominated rows
    (same normalized coefficients, larger bound) are pruned at every stage.
    """
    labels = labels or [f"x{i}" for i in range(nvars)]

    def normalize(batch):
        kept: dict[tuple[Fraction, ...], Fraction] = {}
        for coeffs, rhs in batch:
            scale = next((abs(c) for c in coeffs if c != 0), None)
            if scale is None:
                if rhs < 0:
                    return None
                continue
            key = tuple(c / scale for c in coeffs)
            rhs = rhs / scale
            if key not in kept or rhs < kept[key]:
                kept[key] = rhs
        return [(k, v) for k, v in kept.items()]

    current = normalize(rows)
    if current is None:
        return False, "contradiction in the initial constraints"
    for j in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in current:
            c = coeffs[j]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        combined = rest
        for pc, pr in pos:
            pj = pc[j]
            for nc, nr in neg:
                nj = -nc[j]
                coeffs = tuple(a / pj + b / nj for a, b in zip(pc, nc))
                combined.append((coeffs, pr / pj + nr / nj))
        current = normalize(combined)
        if current is None:
            return False, f"contradiction after eliminating {labels[j]}"
    return True, None


# ---------------------------------------------------------------------------
# Text format: line 1 "k"; line 2 "W: v1 v2 ..."; then "e n_e" per edge
# ---------------------------------------------------------------------------


def format_certificate(k: int, cert: Certificate) -> str:
    out = [str(k), "W: " + " ".join(str(v) for v in sorted(cert.vertices))]
    out.extend(f"{e} {cert.interior_counts[e]}" for e in sorted(cert.interior_counts))
    return "\n".join(line.rstrip() for line in out) + "\n"


def parse_certificate(text: str) -> tuple[int, Certificate]:
    lines = [line for line in text.splitlines()]
    if not lines:
        raise MalformedLineError("expected a bound line 'k'", line=1)
    try:
        k = int(lines[0].strip())
    except ValueError:
        raise MalformedLineError("expected an integer bound 'k'", line=1) from None
    if len(lines) < 2 or not lines[1].strip().startswith("W:"):
        raise MalformedLineError("expected a 'W: ...' line", line=2)
    try:
        vertices = frozenset(int(tok) for tok in lines[1].strip()[2:].split())
    except ValueError:
        raise MalformedLineError("vertex ids must be integers", line=2) from None
    counts: dict[int, int] = {}
    for lineno, raw in enumerate(lines[2:], start=3):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise MalformedLineError("expected 'e n_e'", line=lineno)
        try:
            e, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError("expected integers 'e n_e'", line=lineno) from None
        if e in counts:
            raise MalformedLineError(f"edge {e} listed twice", line=lineno)
        if c < 0:
            raise MalformedLineError("interior count must be non-negative", line=lineno)
        counts[e] = c
    return k, Certificate(vertices, counts)
