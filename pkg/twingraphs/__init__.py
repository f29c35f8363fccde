"""Numerical toolkit for vertical graphs in E(κ,τ) and L(κ,τ) and their twin correspondence."""

from .config.config import ToolkitConfig
from .services.catalog.service import generate
from .services.duality.service import DualityService
from .services.field_ops.service import FieldOpsService
from .services.field_ops.types import ScalarField
from .services.solver.service import DirichletSolver
from .services.solver.types import DirichletProblem
from .services.space_model.types import CausalCharacter, DomainSpec, SpaceParams

__version__ = "0.1.0"

__all__ = [
    'CausalCharacter',
    'DirichletProblem',
    'DirichletSolver',
    'DomainSpec',
    'DualityService',
    'FieldOpsService',
    'ScalarField',
    'SpaceParams',
    'ToolkitConfig',
    'generate',
]
