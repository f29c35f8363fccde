"""Twin correspondence between CMC graphs in E(κ,τ) and spacelike CMC graphs in L(κ,H)."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .integration import integrate_exact_form
from .types import DualityResiduals, DualPair, TwinDirection
from ..field_ops.service import FieldOpsService
from ..field_ops.stencils import derivative, lambda_at
from ..field_ops.types import FrameField, ScalarField
from ..space_model.types import Cell, CausalCharacter, SpaceParams
from ...config.config import DualityConfig
from ...exceptions.exceptions import (
    GridFormatError,
    LightConeDegeneracyError,
    NotCMCError,
    PreconditionError,
    TwinGraphsError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurvatureEstimate:
    """Mean value and spread of a discrete mean-curvature field on the core cells."""
    mean: float
    spread: float
    value_range: Tuple[float, float]
    h: float


class DualityService:
    """Builds and verifies dual pairs."""

    def __init__(self, config: Optional[DualityConfig] = None, field_ops: Optional[FieldOpsService] = None):
        self.config = config or DualityConfig()
        self.field_ops = field_ops or FieldOpsService()
        logger.info("DualityService initialized successfully")

    def twin_gradient(self, field: FrameField, direction: TwinDirection) -> FrameField:
        """Apply the twin relations α̃ = −β/ω, β̃ = α/ω or their inverse α = β̃/ω̃, β = −α̃/ω̃."""
        direction = TwinDirection(direction)
        expected = CausalCharacter.RIEMANNIAN if direction is TwinDirection.E_TO_L else CausalCharacter.LORENTZIAN
        if field.causal is not expected:
            raise PreconditionError(f"{direction.value} needs a {expected.value} frame field")
        mask = field.domain.mask
        if direction is TwinDirection.E_TO_L:
            alpha = -field.beta / field.omega
            beta = field.alpha / field.omega
            omega = np.sqrt(1.0 - alpha ** 2 - beta ** 2)
            return FrameField(field.domain, alpha, beta, omega, CausalCharacter.LORENTZIAN)
        degenerate = mask & (field.omega ** 2 <= self.field_ops.margin)
        if degenerate.any():
            raise LightConeDegeneracyError(
                f"Twin relations degenerate on {int(degenerate.sum())} cells near the light cone"
            )
        alpha = field.beta / field.omega
        beta = -field.alpha / field.omega
        omega = np.sqrt(1.0 + alpha ** 2 + beta ** 2)
        return FrameField(field.domain, alpha, beta, omega, CausalCharacter.RIEMANNIAN)

    @staticmethod
    def direction_from(params: SpaceParams) -> TwinDirection:
        return TwinDirection.L_TO_E if params.is_lorentzian else TwinDirection.E_TO_L

    def integrability_residual(self, field: FrameField, params: SpaceParams) -> float:
        """max |∂y p − ∂x q| / 2λ² on core cells for the 1-form rebuilt from `field` in `params`.

        For a twinned frame this equals the deviation of the source mean
        curvature from the target bundle curvature.
        """
        domain = field.domain
        p, q = self.field_ops.differential_from_frame(field, params)
        curl = derivative(p, domain.h, axis=0) - derivative(q, domain.h, axis=1)
        X, Y = domain.grid()
        core = domain.core_mask(1)
        if not core.any():
            return 0.0
        normalised = np.abs(curl[core]) / (2.0 * lambda_at(params, X[core], Y[core]) ** 2)
        return float(normalised.max())

    def estimate_mean_curvature(self, u: ScalarField, params: SpaceParams) -> CurvatureEstimate:
        """Mean curvature of a presumed CMC graph, with a Richardson-extrapolated spread."""
        domain = u.domain
        core = domain.core_mask(1)
        if not core.any():
            raise PreconditionError("Domain has no core cells to measure curvature on")
        H_fine = self.field_ops.mean_curvature(u, params).values
        raw = H_fine[core]
        raw_range = (float(raw.min()), float(raw.max()))
        mean, spread = float(raw.mean()), raw_range[1] - raw_range[0]

        if self.config.richardson:
            coarse_domain = domain.subsample(2)
            coarse_core = coarse_domain.core_mask(1)
            common = core[::2, ::2] & coarse_core
            if common.any():
                H_coarse = self.field_ops.mean_curvature_values(
                    u.values[::2, ::2], coarse_domain, params, clip=True
                )
                extrapolated = (4.0 * H_fine[::2, ::2][common] - H_coarse[common]) / 3.0
                extrapolated_spread = float(extrapolated.max() - extrapolated.min())
                if np.isfinite(extrapolated_spread):
                    logger.debug(f"Curvature spread raw={spread:.3e} extrapolated={extrapolated_spread:.3e}")
                    mean = float(extrapolated.mean())
                    spread = min(spread, extrapolated_spread)
        return CurvatureEstimate(mean, spread, raw_range, domain.h)

    def _require_cmc(self, estimate: CurvatureEstimate) -> None:
        """Reject a graph whose curvature spread exceeds the tolerance plus an O(h²) allowance."""
        allowance = self.config.cmc_tolerance + self.config.cmc_h2_factor * estimate.h ** 2
        tolerance = allowance * max(1.0, abs(estimate.mean))
        if estimate.spread > tolerance:
            low, high = estimate.value_range
            raise NotCMCError(
                f"Mean curvature is not constant: range [{low:.6g}, {high:.6g}], "
                f"spread {estimate.spread:.3e} exceeds {tolerance:.3e}",
                curvature_range=estimate.value_range
            )

    def dualize(
        self,
        u: ScalarField,
        params: SpaceParams,
        anchor: Optional[Cell] = None,
        mean_curvature: Optional[float] = None,
        verify_cmc: bool = True
    ) -> DualPair:
        """Integrate the twin relations of a CMC graph into its dual graph.

        The dual lives in (κ, H, flipped causal character) and is gauged by
        v(anchor) = 0; the anchor defaults to the cell nearest the centroid.
        """
        domain = u.domain
        domain.require_in_chart(params.kappa)
        domain.require_simply_connected()
        anchor = domain.centroid_cell() if anchor is None else tuple(anchor)
        if not domain.contains_cell(anchor):
            raise PreconditionError(f"Anchor {anchor} is not an unmasked cell")

        frame = self.field_ops.generalized_gradient(u, params)
        estimate = None
        if verify_cmc or mean_curvature is None:
            estimate = self.estimate_mean_curvature(u, params)
            if verify_cmc:
                self._require_cmc(estimate)
        H = float(mean_curvature) if mean_curvature is not None else estimate.mean
        target_params = params.dual(H)
        logger.info(f"Dualizing graph in {params.label} into {target_params.label}")

        try:
            twin = self.twin_gradient(frame, self.direction_from(params))
            p, q = self.field_ops.differential_from_frame(twin, target_params)
            v = ScalarField(domain, integrate_exact_form(p, q, domain, anchor))
            residuals = self._residuals(u, params, v, target_params, frame, twin, estimate)
        except TwinGraphsError:
            raise
        except Exception as e:
            logger.error(f"Dualization failed: {str(e)}", exc_info=True)
            raise TwinGraphsError(f"Dualization failed: {str(e)}")

        logger.info(
            f"Dual pair built: omega product {residuals.omega_product_residual:.2e}, "
            f"curvature transfer {residuals.curvature_transfer_residual:.2e}"
        )
        return DualPair(u, params, v, target_params, anchor, residuals)

    def _residuals(
        self,
        u: ScalarField,
        params: SpaceParams,
        v: ScalarField,
        target_params: SpaceParams,
        frame: FrameField,
        twin: FrameField,
        estimate: Optional[CurvatureEstimate],
        partner: Optional[FrameField] = None
    ) -> DualityResiduals:
        """Residuals of a pair; `partner` is the frame paired with `frame` (the twin unless given)."""
        mask = u.domain.mask
        core = u.domain.core_mask(1)
        ops = self.field_ops
        partner = twin if partner is None else partner

        omega_product = np.abs(frame.omega * partner.omega - 1.0)[mask]
        angle_product = np.abs(ops.angle_function(frame).values * ops.angle_function(partner).values - 1.0)[mask]
        riemannian, lorentzian = (frame, partner) if not params.is_lorentzian else (partner, frame)
        conformality = ops.frame_form(lorentzian).max_entry_difference(
            ops.frame_form(riemannian), factor=riemannian.omega ** -2
        )

        v_frame = ops.generalized_gradient(v, target_params)
        twin_residual = max(
            float(np.abs(v_frame.alpha - twin.alpha)[core].max(initial=0.0)),
            float(np.abs(v_frame.beta - twin.beta)[core].max(initial=0.0)),
        )
        H_target = ops.mean_curvature(v, target_params).values
        transfer = np.abs(H_target - params.bundle)[core]

        return DualityResiduals(
            source_mean_curvature=target_params.bundle,
            cmc_spread=estimate.spread if estimate is not None else float("nan"),
            omega_product_residual=float(omega_product.max()),
            angle_product_residual=float(angle_product.max()),
            conformality_residual=conformality,
            integrability_residual=self.integrability_residual(twin, target_params),
            twin_residual=twin_residual,
            curvature_transfer_residual=float(transfer.max(initial=0.0)),
        )

    def roundtrip_error(self, pair: DualPair) -> float:
        """max |u_recovered − u − c*| after dualizing the target back, c* the mean offset."""
        back = self.dualize(
            pair.target,
            pair.target_params,
            anchor=pair.anchor,
            mean_curvature=pair.source_params.bundle,
            verify_cmc=False
        )
        mask = pair.source.domain.mask
        difference = (back.target.values - pair.source.values)[mask]
        return float(np.max(np.abs(difference - difference.mean())))

    def pair_from_fields(
        self,
        u: ScalarField,
        params: SpaceParams,
        v: ScalarField,
        target_params: SpaceParams,
        anchor: Optional[Cell] = None
    ) -> DualPair:
        """Wrap two independently produced grids as a dual pair and measure its residuals."""
        if not u.domain.same_grid(v.domain) or not np.array_equal(u.domain.mask, v.domain.mask):
            raise GridFormatError("Source and target grids do not share one domain")
        if target_params.kappa != params.kappa or target_params.causal is not params.causal.flipped:
            raise GridFormatError(
                f"{target_params.label} cannot be the dual space of {params.label}"
            )
        anchor = u.domain.centroid_cell() if anchor is None else tuple(anchor)
        frame = self.field_ops.generalized_gradient(u, params)
        twin = self.twin_gradient(frame, self.direction_from(params))
        partner = self.field_ops.generalized_gradient(v, target_params)
        estimate = self.estimate_mean_curvature(u, params)
        residuals = self._residuals(u, params, v, target_params, frame, twin, estimate, partner=partner)
        return DualPair(u, params, v, target_params, anchor, residuals)
