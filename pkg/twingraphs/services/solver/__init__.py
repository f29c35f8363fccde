"""CMC Dirichlet solver package."""

from .service import DirichletSolver
from .types import DirichletProblem, SolverReport, SolverResult
from .utils.retry import retry_with_damping

__all__ = [
    'DirichletProblem',
    'DirichletSolver',
    'SolverReport',
    'SolverResult',
    'retry_with_damping',
]
