"""Types of the twin correspondence."""

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel

from ..field_ops.types import ScalarField
from ..space_model.types import Cell, SpaceParams


class TwinDirection(str, Enum):
    E_TO_L = "EtoL"
    L_TO_E = "LtoE"


class DualityResiduals(BaseModel):
    """Verification residuals recorded on every dual pair."""
    source_mean_curvature: float
    cmc_spread: float
    omega_product_residual: float
    angle_product_residual: float
    conformality_residual: float
    integrability_residual: float
    twin_residual: float
    curvature_transfer_residual: float


@dataclass(frozen=True, eq=False)
class DualPair:
    """A graph u in one space and its dual v over the same domain, gauged by v(anchor) = 0."""
    source: ScalarField
    source_params: SpaceParams
    target: ScalarField
    target_params: SpaceParams
    anchor: Cell
    residuals: DualityResiduals

    @property
    def source_mean_curvature(self) -> float:
        return self.target_params.bundle
