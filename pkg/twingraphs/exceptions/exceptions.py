"""Custom exceptions for the twingraphs toolkit."""

from typing import List, Optional, Sequence, Tuple


class TwinGraphsError(Exception):
    """Base exception for twingraphs"""
    exit_code = 2


class ConfigurationError(TwinGraphsError):
    """Raised when there's an error with toolkit configuration"""
    pass


class DomainError(TwinGraphsError):
    """Raised when a point or grid lies outside the admissible chart or window"""
    pass


class TopologyError(DomainError):
    """Raised when a mask is not connected and simply connected"""
    pass


class RotationDomainError(DomainError):
    """Raised when a rotated domain leaves the sampling grid"""
    pass


class GridFormatError(TwinGraphsError):
    """Raised when a grid file or a pair of grids is malformed"""
    pass


class InfeasibleTargetError(TwinGraphsError):
    """Raised when a parameter map has no real solution"""
    pass


class PreconditionError(TwinGraphsError):
    """Raised when an operation's input violates a documented precondition"""
    pass


class NumericalError(TwinGraphsError):
    """Base exception for numeric failures"""
    exit_code = 3


class NotSpacelikeError(NumericalError):
    """Raised when a Lorentzian graph violates the spacelike condition"""

    def __init__(self, message: str, cells: Optional[Sequence[Tuple[int, int]]] = None):
        super().__init__(message)
        self.cells: List[Tuple[int, int]] = list(cells or [])


class LightConeDegeneracyError(NumericalError):
    """Raised when twin relations degenerate at the light cone"""
    pass


class NotCMCError(NumericalError):
    """Raised when a source graph does not have constant mean curvature"""

    def __init__(self, message: str, curvature_range: Optional[Tuple[float, float]] = None):
        super().__init__(message)
        self.curvature_range = curvature_range


class NotMinimalError(NotCMCError):
    """Raised when a graph required to be minimal is not"""
    pass


class SolverConvergenceError(NumericalError):
    """Raised when the Dirichlet solver fails to converge"""

    def __init__(
        self,
        message: str,
        residual_history: Optional[Sequence[float]] = None,
        retryable: bool = False
    ):
        super().__init__(message)
        self.residual_history: List[float] = list(residual_history or [])
        self.retryable = retryable


def is_retryable_error(error: Exception) -> bool:
    """Check if a solver error can be retried with stronger damping."""
    return isinstance(error, SolverConvergenceError) and error.retryable
