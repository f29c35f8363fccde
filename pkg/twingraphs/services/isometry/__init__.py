"""Isometry lifting and equivariance of the duality."""

from .service import IsometryService, LiftedIsometry

__all__ = [
    'IsometryService',
    'LiftedIsometry',
]
