"""Exception types shared across the solver suite."""


class DispersionError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(DispersionError, ValueError):
    """A text input (graph, witness, certificate) violates its file format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class MalformedLineError(GraphFormatError):
    """A line does not have the shape the format requires."""


class VertexRangeError(GraphFormatError):
    """An edge refers to a vertex id outside [0, vertex_count)."""


class SelfLoopError(GraphFormatError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphFormatError):
    """The same vertex pair appears twice in the edge list."""


class DisconnectedGraphError(GraphFormatError):
    """The edge list does not connect all vertices."""


class NPHardRegimeError(DispersionError):
    """Exact solve requested for a spacing with numerator >= 3.

    That regime has no known polynomial algorithm (the problem is NP-hard
    there); callers must opt into the exponential search explicitly.
    """


class SizeGuardExceededError(DispersionError):
    """The brute-force candidate set is larger than the configured cap."""


class OracleTimeoutError(DispersionError):
    """The brute-force search exceeded its time budget."""


class InternalConsistencyError(DispersionError):
    """A structural guarantee the algorithms rely on failed; indicates a bug."""
