"""Picard solver for the prescribed mean curvature Dirichlet problem."""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import NoConvergence, newton_krylov
from scipy.sparse.linalg import cg, spsolve

from .types import DirichletProblem, SolverReport, SolverResult
from .utils.retry import retry_with_damping
from ..field_ops.service import FieldOpsService
from ..field_ops.stencils import face_coordinates, lambda_at
from ..field_ops.types import ScalarField
from ...config.config import SolverConfig
from ...exceptions.exceptions import NotSpacelikeError, SolverConvergenceError, TwinGraphsError

logger = logging.getLogger(__name__)

# (row offset, col offset, face axis, face row offset, face col offset)
_FACES = (
    (0, 1, "x", 0, 0),
    (0, -1, "x", 0, -1),
    (1, 0, "y", 0, 0),
    (-1, 0, "y", -1, 0),
)


class DirichletSolver:
    """Solves ½ div(G/ω) = H with Picard iterations on frozen face ω.

    Each step solves the symmetric positive definite system obtained by
    freezing ω on the faces, directly or by conjugate gradients; Lorentzian
    iterates that approach the light cone are projected back inside the
    spacelike margin. An optional Jacobian-free Newton polish takes over once
    the Picard residual drops below `polish_switch`.
    """

    def __init__(self, field_ops: Optional[FieldOpsService] = None):
        self.field_ops = field_ops or FieldOpsService()
        logger.info("DirichletSolver initialized successfully")

    def solve(self, problem: DirichletProblem) -> SolverResult:
        config = problem.config
        runner = retry_with_damping(max_retries=config.max_retries, backoff=config.damping_backoff)(self._iterate)
        try:
            return runner(problem, damping=config.damping)
        except TwinGraphsError:
            raise
        except Exception as e:
            logger.error(f"Dirichlet solve failed: {str(e)}", exc_info=True)
            raise SolverConvergenceError(f"Dirichlet solve failed: {str(e)}")

    def _assemble(
        self,
        problem: DirichletProblem,
        omega_x: np.ndarray,
        omega_y: np.ndarray,
        with_sources: bool
    ) -> Tuple[sparse.csr_matrix, np.ndarray]:
        """Rows: Σ_faces (u_nb − u_c)/ω_f = 2h²λ²H − h·(net bundle flux), boundary terms moved right."""
        domain, params = problem.domain, problem.params
        h = domain.h
        interior = domain.interior_mask()
        index = np.full(interior.shape, -1, dtype=int)
        ii, jj = np.nonzero(interior)
        n = ii.size
        index[ii, jj] = np.arange(n)
        ub = np.nan_to_num(problem.boundary_values, nan=0.0)

        (xf_x, xf_y), (yf_x, yf_y) = face_coordinates(domain)
        eps_tau = params.epsilon * params.bundle
        sources = {
            "x": eps_tau * lambda_at(params, xf_x, xf_y) * xf_y,
            "y": -eps_tau * lambda_at(params, yf_x, yf_y) * yf_x,
        }
        omegas = {"x": omega_x, "y": omega_y}

        rows: List[np.ndarray] = []
        cols: List[np.ndarray] = []
        data: List[np.ndarray] = []
        diagonal = np.zeros(n)
        rhs = np.zeros(n)
        if with_sources:
            lam = lambda_at(params, *domain.grid())
            rhs += 2.0 * h * h * lam[ii, jj] ** 2 * problem.mean_curvature

        cells = np.arange(n)
        for di, dj, axis, fi, fj in _FACES:
            weight = 1.0 / omegas[axis][ii + fi, jj + fj]
            ni, nj = ii + di, jj + dj
            diagonal -= weight
            neighbour = index[ni, nj]
            inside = neighbour >= 0
            rows.append(cells[inside])
            cols.append(neighbour[inside])
            data.append(weight[inside])
            rhs[~inside] -= weight[~inside] * ub[ni[~inside], nj[~inside]]
            if with_sources:
                outward = 1.0 if (di + dj) > 0 else -1.0
                rhs -= h * outward * weight * sources[axis][ii + fi, jj + fj]

        rows.append(cells)
        cols.append(cells)
        data.append(diagonal)
        matrix = sparse.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
        ).tocsr()
        return matrix, rhs

    def _residual(self, values: np.ndarray, problem: DirichletProblem) -> float:
        H = self.field_ops.mean_curvature_values(values, problem.domain, problem.params, clip=True)
        interior = problem.domain.interior_mask()
        return float(np.max(np.abs(H[interior] - problem.mean_curvature)))

    def harmonic_extension(self, problem: DirichletProblem) -> np.ndarray:
        """Discrete harmonic function with the problem's boundary values."""
        domain = problem.domain
        ones_x = np.ones((domain.ny, domain.nx - 1))
        ones_y = np.ones((domain.ny - 1, domain.nx))
        matrix, rhs = self._assemble(problem, ones_x, ones_y, with_sources=False)
        values = np.where(domain.boundary_mask(), problem.boundary_values, np.nan)
        values[domain.interior_mask()] = spsolve(-matrix, -rhs)
        return values

    @staticmethod
    def _linear_solve(
        matrix: sparse.csr_matrix,
        rhs: np.ndarray,
        guess: np.ndarray,
        config: SolverConfig
    ) -> np.ndarray:
        if config.linear_solver == "direct":
            return spsolve(-matrix, -rhs)
        solution, info = cg(-matrix, -rhs, x0=guess, rtol=1e-12, atol=0.0, maxiter=10 * rhs.size)
        if info != 0:
            raise SolverConvergenceError(f"Conjugate gradients stopped early (info={info})")
        return solution

    def _newton_polish(self, values: np.ndarray, problem: DirichletProblem, history: List[float]) -> np.ndarray:
        """Drive the curvature defect below the tolerance with Newton-Krylov steps."""
        config, domain = problem.config, problem.domain
        interior = domain.interior_mask()

        def defect(unknowns: np.ndarray) -> np.ndarray:
            trial = values.copy()
            trial[interior] = unknowns
            H = self.field_ops.mean_curvature_values(trial, domain, problem.params, clip=True)
            return H[interior] - problem.mean_curvature

        try:
            unknowns = newton_krylov(
                defect,
                values[interior],
                f_tol=config.tolerance,
                maxiter=config.newton_max_iterations,
                inner_maxiter=100
            )
        except NoConvergence as e:
            raise SolverConvergenceError(f"Newton polish did not converge: {str(e)}", residual_history=history)
        polished = values.copy()
        polished[interior] = unknowns
        history.append(self._residual(polished, problem))
        logger.info(f"Newton polish reached curvature residual {history[-1]:.3e}")
        return polished

    def _iterate(self, problem: DirichletProblem, damping: float = 1.0) -> SolverResult:
        config, domain = problem.config, problem.domain
        interior = domain.interior_mask()
        values = self.harmonic_extension(problem)
        history: List[float] = []
        logger.info(
            f"Solving H={problem.mean_curvature} in {problem.params.label} "
            f"on {int(interior.sum())} unknowns with damping {damping}"
        )

        picard_tolerance = max(config.tolerance, config.polish_switch) if config.newton_polish else config.tolerance
        converged = False
        for iteration in range(config.max_iterations + 1):
            residual = self._residual(values, problem)
            history.append(residual)
            logger.debug(f"Iteration {iteration}: curvature residual {residual:.3e}")
            if residual <= picard_tolerance:
                converged = True
                break
            if not np.isfinite(residual) or residual > config.divergence_factor * max(history[0], config.tolerance):
                raise SolverConvergenceError(
                    f"Picard iteration diverged at step {iteration} (residual {residual:.3e})",
                    residual_history=history,
                    retryable=True
                )
            if iteration == config.max_iterations:
                break
            _, (omega_x, omega_y) = self.field_ops.face_fluxes(values, domain, problem.params, clip=True)
            matrix, rhs = self._assemble(problem, omega_x, omega_y, with_sources=True)
            update = self._linear_solve(matrix, rhs, values[interior], config)
            values[interior] = values[interior] + damping * (update - values[interior])

        if not converged:
            raise SolverConvergenceError(
                f"No convergence after {config.max_iterations} iterations "
                f"(residual {history[-1]:.3e} > {picard_tolerance:.3e})",
                residual_history=history
            )
        polished = config.newton_polish and history[-1] > config.tolerance
        if polished:
            values = self._newton_polish(values, problem, history)

        result = ScalarField(domain, values)
        if problem.params.is_lorentzian:
            try:
                self.field_ops.mean_curvature(result, problem.params)
                self.field_ops.generalized_gradient(result, problem.params)
            except NotSpacelikeError as e:
                raise SolverConvergenceError(
                    f"Converged iterate breaches the spacelike margin: {str(e)}",
                    residual_history=history
                )

        report = SolverReport(
            converged=True,
            iterations=len(history) - 1,
            final_residual=history[-1],
            residual_history=history,
            damping=damping,
            newton_polished=polished,
            mean_curvature=problem.mean_curvature,
            space=problem.params.label,
        )
        logger.info(f"Solver converged in {report.iterations} iterations (residual {report.final_residual:.3e})")
        return SolverResult(result, report)
