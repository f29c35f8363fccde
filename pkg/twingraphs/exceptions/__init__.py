"""Exceptions package for twingraphs."""

from .exceptions import (
    TwinGraphsError,
    ConfigurationError,
    DomainError,
    TopologyError,
    RotationDomainError,
    GridFormatError,
    InfeasibleTargetError,
    PreconditionError,
    NumericalError,
    NotSpacelikeError,
    LightConeDegeneracyError,
    NotCMCError,
    NotMinimalError,
    SolverConvergenceError,
    is_retryable_error
)

__all__ = [
    'TwinGraphsError',
    'ConfigurationError',
    'DomainError',
    'TopologyError',
    'RotationDomainError',
    'GridFormatError',
    'InfeasibleTargetError',
    'PreconditionError',
    'NumericalError',
    'NotSpacelikeError',
    'LightConeDegeneracyError',
    'NotCMCError',
    'NotMinimalError',
    'SolverConvergenceError',
    'is_retryable_error'
]
