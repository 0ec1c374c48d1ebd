"""Exception hierarchy shared by every module of the package."""


class LipFreeError(Exception):
    """Base class for all errors raised by lipfree."""


class MetricError(LipFreeError, ValueError):
    """A candidate matrix is not a valid pointed metric."""

    axiom = "metric"

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotSquare(MetricError):
    axiom = "square"


class DuplicatePoint(MetricError):
    axiom = "distinct_labels"


class BadBase(MetricError):
    axiom = "base"


class NonzeroDiagonal(MetricError):
    axiom = "zero_diagonal"


class AsymmetricMatrix(MetricError):
    axiom = "symmetry"


class NegativeOrZeroOffDiagonal(MetricError):
    axiom = "positivity"


class TriangleViolation(MetricError):
    """``d[i][j] > d[i][k] + d[k][j]``; the witness is ``(i, j, k)``."""

    axiom = "triangle"

    def __init__(self, i, j, k, message=None):
        super().__init__(
            message or f"d[{i}][{j}] exceeds d[{i}][{k}] + d[{k}][{j}]", (i, j, k)
        )
        self.i, self.j, self.k = i, j, k


class SamePoint(LipFreeError, ValueError):
    pass


class EpsOutOfRange(LipFreeError, ValueError):
    pass


class BadProfile(LipFreeError, ValueError):
    pass


class SingletonSpace(LipFreeError, ValueError):
    pass


class IndexOutOfRange(LipFreeError, IndexError):
    pass


class SpaceMismatch(LipFreeError, ValueError):
    pass


class BaseNotInSubset(LipFreeError, ValueError):
    pass


class NontrivialSegment(LipFreeError, ValueError):
    pass


class NormViolation(LipFreeError, ValueError):
    pass


class PreconditionNotMet(LipFreeError, ValueError):
    """Raised with ``clause`` naming which hypothesis failed."""

    def __init__(self, clause, message=None):
        super().__init__(message or clause)
        self.clause = clause


class DocumentError(LipFreeError, ValueError):
    """Malformed serialized document."""
