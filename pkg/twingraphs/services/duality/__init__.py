"""Twin correspondence service package."""

from .integration import integrate_exact_form
from .service import CurvatureEstimate, DualityService
from .types import DualityResiduals, DualPair, TwinDirection

__all__ = [
    'CurvatureEstimate',
    'DualityResiduals',
    'DualityService',
    'DualPair',
    'TwinDirection',
    'integrate_exact_form',
]
