"""Problem and result types for the CMC Dirichlet solver."""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel

from ..field_ops.types import ScalarField
from ..space_model.types import DomainSpec, SpaceParams
from ...config.config import SolverConfig
from ...exceptions.exceptions import DomainError


@dataclass(frozen=True, eq=False)
class DirichletProblem:
    """Prescribed mean curvature H on the interior cells, fixed values on the boundary layer."""
    params: SpaceParams
    mean_curvature: float
    domain: DomainSpec
    boundary_values: np.ndarray = field(repr=False)
    config: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if not math.isfinite(self.mean_curvature):
            raise DomainError(f"Prescribed mean curvature must be finite, got {self.mean_curvature}")
        values = np.asarray(self.boundary_values, dtype=float)
        if values.shape != self.domain.mask.shape:
            raise DomainError(f"Boundary values have shape {values.shape}, expected {self.domain.mask.shape}")
        if not np.all(np.isfinite(values[self.boundary_mask])):
            raise DomainError("Boundary values must be finite on every boundary cell")
        if not self.domain.interior_mask().any():
            raise DomainError("Domain has no interior cells to solve for")
        object.__setattr__(self, "boundary_values", values)

    @property
    def boundary_mask(self) -> np.ndarray:
        return self.domain.boundary_mask()

    @classmethod
    def from_function(
        cls,
        params: SpaceParams,
        mean_curvature: float,
        domain: DomainSpec,
        boundary: Callable[[np.ndarray, np.ndarray], np.ndarray],
        config: Optional[SolverConfig] = None
    ) -> "DirichletProblem":
        X, Y = domain.grid()
        values = np.where(domain.boundary_mask(), boundary(X, Y), np.nan)
        return cls(params, mean_curvature, domain, values, config or SolverConfig())

    @classmethod
    def constant_boundary(
        cls,
        params: SpaceParams,
        mean_curvature: float,
        domain: DomainSpec,
        value: float = 0.0,
        config: Optional[SolverConfig] = None
    ) -> "DirichletProblem":
        return cls.from_function(params, mean_curvature, domain, lambda x, y: np.full_like(x, value), config)


class SolverReport(BaseModel):
    """Convergence record of one solve."""
    converged: bool
    iterations: int
    final_residual: float
    residual_history: List[float]
    damping: float
    mean_curvature: float
    space: str
    newton_polished: bool = False


@dataclass(frozen=True, eq=False)
class SolverResult:
    field: ScalarField
    report: SolverReport
