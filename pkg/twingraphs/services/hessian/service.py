"""Flux identities of graphs and Hessian-one solutions built from minimal graphs in R³."""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..duality.integration import integrate_exact_form
from ..field_ops.service import FieldOpsService
from ..field_ops.stencils import derivative, gradient, lambda_at, second_derivatives
from ..field_ops.types import ScalarField
from ..space_model.types import Cell, CausalCharacter, SpaceParams
from ...config.config import AnalysisConfig, HessianConfig
from ...exceptions.exceptions import NotMinimalError, PreconditionError

logger = logging.getLogger(__name__)

EUCLIDEAN = SpaceParams(0.0, 0.0, CausalCharacter.RIEMANNIAN)


@dataclass(frozen=True, eq=False)
class HessianSolution:
    """f with f_xx f_yy − f_xy² = 1, built from the minimal graph `source`."""
    f: ScalarField
    source: ScalarField
    det_residual: ScalarField
    g: ScalarField = field(repr=False)
    h: ScalarField = field(repr=False)
    mixed_residual: float = 0.0
    convex: bool = True

    @property
    def max_det_residual(self) -> float:
        return self.det_residual.sup_norm()


class HessianService:
    """Graph flux identities and Hessian-one potentials built by integrating closed forms twice."""

    def __init__(
        self,
        config: Optional[HessianConfig] = None,
        analysis_config: Optional[AnalysisConfig] = None,
        field_ops: Optional[FieldOpsService] = None
    ):
        self.config = config or HessianConfig()
        self.analysis_config = analysis_config or AnalysisConfig()
        self.field_ops = field_ops or FieldOpsService()
        logger.info("HessianService initialized successfully")

    def flux_identity_residual(
        self,
        u: ScalarField,
        params: SpaceParams,
        margin: float = 0.0
    ) -> Tuple[ScalarField, ScalarField]:
        """Residuals of the two divergence identities satisfied by any graph in E(κ,τ):

            λ⁻²[(λ²(1+α²)/ω)_y − (λ²αβ/ω)_x] = λ(2τα/ω − 2Hβ) + (λ_y/λ)(1+ω²)/ω
            λ⁻²[(λ²(1+β²)/ω)_x − (λ²αβ/ω)_y] = −λ(2τβ/ω + 2Hα) + (λ_x/λ)(1+ω²)/ω

        H is the pointwise mean-curvature field. Both residual fields live on the
        core cells, further eroded by `margin` (a distance in base units). Solver
        output on a staircase boundary is only smooth away from the corners, so
        a fixed margin keeps the residual O(h²) there.
        """
        if params.is_lorentzian:
            raise PreconditionError("Flux identities are stated for Riemannian graphs")
        if margin < 0:
            raise PreconditionError(f"Margin must be non-negative, got {margin}")
        domain = u.domain
        frame = self.field_ops.generalized_gradient(u, params)
        H = self.field_ops.mean_curvature(u, params).values
        alpha, beta, omega = frame.alpha, frame.beta, frame.omega
        X, Y = domain.grid()
        lam = lambda_at(params, X, Y)
        lam2 = lam ** 2
        h, tau, kappa = domain.h, params.bundle, params.kappa
        lam_x_over_lam = -0.5 * kappa * X * lam
        lam_y_over_lam = -0.5 * kappa * Y * lam
        P = lam2 * (1 + alpha ** 2) / omega
        Q = lam2 * alpha * beta / omega
        R = lam2 * (1 + beta ** 2) / omega
        conformal = (1 + omega ** 2) / omega

        first = (derivative(P, h, 0) - derivative(Q, h, 1)) / lam2 - (
            lam * (2 * tau * alpha / omega - 2 * H * beta) + lam_y_over_lam * conformal
        )
        second = (derivative(R, h, 1) - derivative(Q, h, 0)) / lam2 - (
            -lam * (2 * tau * beta / omega + 2 * H * alpha) + lam_x_over_lam * conformal
        )
        depth = 1 + math.ceil(margin / domain.h - 1e-9)
        core = domain.with_mask(domain.core_mask(depth))
        return ScalarField(core, first), ScalarField(core, second)

    def hessian_from_minimal(self, u: ScalarField, anchor: Optional[Cell] = None) -> HessianSolution:
        """Integrate g, h from the minimal graph u in R³ and then f from (f_x, f_y) = (g, h).

        With P = (1+α²)/ω, Q = αβ/ω, R = (1+β²)/ω the flux identities close the
        forms P dx + Q dy and Q dx + R dy, and f_xx = P, f_xy = Q, f_yy = R,
        so det Hess f = PR − Q² = 1. The gauge zeroes f and its
        gradient at the anchor.
        """
        domain = u.domain
        domain.require_simply_connected()
        anchor = domain.centroid_cell() if anchor is None else tuple(anchor)
        if not domain.contains_cell(anchor):
            raise PreconditionError(f"Anchor {anchor} is not an unmasked cell")

        core = domain.core_mask(1)
        if not core.any():
            raise PreconditionError("Domain has no core cells to measure curvature on")
        H = self.field_ops.mean_curvature(u, EUCLIDEAN).values[core]
        if np.max(np.abs(H)) > self.analysis_config.minimal_tolerance:
            raise NotMinimalError(
                f"Graph is not minimal in R3: |H| reaches {np.max(np.abs(H)):.3e}",
                curvature_range=(float(H.min()), float(H.max()))
            )

        frame = self.field_ops.generalized_gradient(u, EUCLIDEAN)
        P = (1 + frame.alpha ** 2) / frame.omega
        Q = frame.alpha * frame.beta / frame.omega
        R = (1 + frame.beta ** 2) / frame.omega

        g = integrate_exact_form(P, Q, domain, anchor)
        h = integrate_exact_form(Q, R, domain, anchor)
        g_y = derivative(g, domain.h, axis=0)
        h_x = derivative(h, domain.h, axis=1)
        mixed = float(np.max(np.abs(g_y - h_x)[core]))
        mixed_tolerance = self.config.mixed_tolerance_factor * domain.h ** 2
        if mixed > mixed_tolerance:
            raise NotMinimalError(f"Potentials violate g_y = h_x by {mixed:.3e} > {mixed_tolerance:.3e}")

        f = integrate_exact_form(g, h, domain, anchor)
        fxx, fyy, fxy = second_derivatives(f, domain.h)
        det_core = domain.core_mask(2)
        det_residual = np.where(det_core, fxx * fyy - fxy ** 2 - 1.0, np.nan)
        convex = bool(np.all(fxx[det_core] > 0) and np.all((fxx * fyy - fxy ** 2)[det_core] > 0))
        solution = HessianSolution(
            f=ScalarField(domain, f),
            source=u,
            det_residual=ScalarField(domain.with_mask(det_core), det_residual),
            g=ScalarField(domain, g),
            h=ScalarField(domain, h),
            mixed_residual=mixed,
            convex=convex,
        )
        logger.info(
            f"Hessian-one solution built: max |det - 1| = {solution.max_det_residual:.3e}, "
            f"mixed residual {mixed:.3e}, convex={convex}"
        )
        return solution
