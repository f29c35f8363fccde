"""Discrete field operators."""

from .service import FieldOpsService
from .types import FrameField, FundamentalForm, ScalarField

__all__ = [
    'FieldOpsService',
    'FrameField',
    'FundamentalForm',
    'ScalarField',
]
