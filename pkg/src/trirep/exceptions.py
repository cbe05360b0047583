"""Exception hierarchy for trirep."""


class TrirepError(Exception):
    """Base class for all trirep errors."""


class LengthMismatchError(TrirepError, ValueError):
    """Vectors of different lengths were combined."""


class IndexRangeError(TrirepError, IndexError):
    """A coordinate index is outside 1..len or repeated."""


class DependentBasisError(TrirepError, ValueError):
    """A set of vectors expected to be a basis is linearly dependent."""


class NotInCodeError(TrirepError, ValueError):
    """A vector is not a codeword of the given code."""


class NotATwoBasisError(TrirepError, ValueError):
    """Some coordinate is nonzero in more than two basis vectors."""


class OracleGuardError(TrirepError):
    """The exhaustive oracle was asked to enumerate a code that is too large."""


class EmptyGraphError(TrirepError, ValueError):
    """A graph without vertices was given where at least one is required."""


class InvalidTriangleError(TrirepError, KeyError):
    """A triangle id does not name a triangle of the complex."""


class DegenerateTriangleError(TrirepError, ValueError):
    """Triangle vertices are not affinely independent."""


class TunnelError(TrirepError, ValueError):
    """Two boundary cycles cannot be joined by a tunnel."""


class BridgePreconditionError(TrirepError, ValueError):
    """The end triangles of a tunnel bridge are not translates in the face plane."""


class RayAdmissibilityError(TrirepError):
    """The ray direction hits a vertex or is parallel to a triangle or edge.

    Callers are expected to retry with another direction.
    """


class PointOnComplexError(TrirepError, ValueError):
    """The base point of a ray lies on the complex."""


class DimensionError(TrirepError, ValueError):
    """An embedding has the wrong ambient dimension for the operation."""


class FormatError(TrirepError, ValueError):
    """A text file does not follow the expected format."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        if line:
            message = f"line {line}: {message}"
        super().__init__(message)
