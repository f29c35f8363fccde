"""Hessian-one construction and graph flux identities."""

from .service import HessianService, HessianSolution

__all__ = [
    'HessianService',
    'HessianSolution',
]
