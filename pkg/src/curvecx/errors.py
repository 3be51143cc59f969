"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`CurveComplexError`
so that the command line front end can map it onto an exit code.
"""


class CurveComplexError(Exception):
    """Base class for all package errors."""


class InvalidTriangulationError(CurveComplexError):
    pass


class InvalidNormalCoordinatesError(CurveComplexError):
    """Weights violate parity or a corner count is negative."""


class EssentialnessError(CurveComplexError):
    """A component bounds a disc (it is the link of the vertex)."""


class MismatchedTriangulationError(CurveComplexError):
    pass


class NotNullHomologousError(CurveComplexError):
    """The cycle m2 - m1 has nonzero homology class."""


class PreconditionError(CurveComplexError):
    """Inputs do not satisfy an operation's precondition."""


class NonSimpleStepError(CurveComplexError):
    def __init__(self, step: int, weight_range: tuple[int, int]):
        self.step = step
        self.weight_range = weight_range
        lo, hi = weight_range
        super().__init__(f"step {step} is not simple: chain weights span [{lo}, {hi}]")


class DegeneratePieceError(CurveComplexError):
    pass


class UnreachableError(CurveComplexError):
    """No path between two vertices inside the truncated slice."""

    def __init__(self, message: str, searched: int):
        super().__init__(message)
        self.searched = searched
