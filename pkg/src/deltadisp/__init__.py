"""Exact solvers for continuous point dispersion on unit-edge graphs."""

from .certify import (
    Certificate,
    Verdict,
    extract_certificate,
    format_certificate,
    parse_certificate,
    verify_certificate,
)
from .core import (
    Graph,
    Point,
    Rational,
    SubdivisionMap,
    WitnessSet,
    as_rational,
    format_graph,
    format_witness,
    hop_distances,
    is_dispersed,
    midpoint,
    normalize_point,
    parse_graph,
    parse_witness,
    point_as_vertex,
    point_distance,
    subdivide,
    vertex_point,
    vicinity,
)
from .dispatch import disp
from .errors import (
    DisconnectedGraphError,
    DispersionError,
    DuplicateEdgeError,
    GraphFormatError,
    InternalConsistencyError,
    MalformedLineError,
    NPHardRegimeError,
    OracleTimeoutError,
    SelfLoopError,
    SizeGuardExceededError,
    VertexRangeError,
)
from .gadget import (
    BezoutCoefficients,
    GadgetInstance,
    bezout_coeffs,
    build_gadget,
    cubic_catalogue,
    format_gadget_map,
    predicted_bound,
    witness_from_independent_set,
)
from .matching import (
    EGDecomposition,
    Matching,
    edmonds_gallai,
    matching_number,
    maximum_matching,
    near_perfect_matching,
)
from .oracle import (
    DEFAULT_CANDIDATE_CAP,
    ConflictGraph,
    brute_disp,
    build_conflict_graph,
)
from .solve2 import (
    CanonicalWitness,
    CutInstance,
    disp2,
    min_surplus,
    surplus,
    validate_canonical,
)

__version__ = "0.1.0"
