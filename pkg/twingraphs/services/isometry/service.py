"""Rotations about the central fiber combined with vertical translations."""

import math
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage
from scipy.interpolate import RectBivariateSpline

from ..duality.service import DualityService
from ..duality.types import DualPair
from ..field_ops.types import ScalarField
from ..space_model.types import DomainSpec, SpaceParams
from ...exceptions.exceptions import RotationDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftedIsometry:
    """(x, y, z) ↦ (R_θ(x, y), z + c) acting on the model space `params`."""
    theta: float
    shift: float
    params: SpaceParams

    @property
    def is_translation(self) -> bool:
        return math.remainder(self.theta, 2.0 * math.pi) == 0.0

    def _rotate(self, x, y, angle: float):
        c, s = math.cos(angle), math.sin(angle)
        return c * x - s * y, s * x + c * y

    def act_on_base(self, x, y):
        """R_θ(x, y)."""
        return self._rotate(x, y, self.theta)

    def act_point(self, point: Sequence[float]) -> Tuple[float, float, float]:
        x, y, z = point
        rx, ry = self.act_on_base(x, y)
        return rx, ry, z + self.shift

    def push_vector(self, vector: Sequence[float]) -> Tuple[float, float, float]:
        """Differential of the isometry applied to a tangent vector."""
        a, b, c = vector
        ra, rb = self._rotate(a, b, self.theta)
        return ra, rb, c

    def inverse_base(self, x, y):
        return self._rotate(x, y, -self.theta)

    def lift_to_dual(self, target_params: SpaceParams) -> "LiftedIsometry":
        """The corresponding isometry of the dual space, pinned by agreeing at the origin."""
        return LiftedIsometry(self.theta, self.shift, target_params)


class IsometryService:
    """Acts on sampled graphs and checks that duality commutes with the action."""

    def __init__(self, duality: Optional[DualityService] = None, margin_cells: int = 2):
        self.duality = duality or DualityService()
        self.margin_cells = margin_cells
        logger.info("IsometryService initialized successfully")

    def act_on_graph(self, iso: LiftedIsometry, u: ScalarField) -> ScalarField:
        """ū with ū(R_θ(x, y)) = u(x, y) + c, resampled by bicubic splines on u's grid."""
        domain = u.domain
        if iso.is_translation:
            return u.shifted(iso.shift)

        X, Y = domain.grid()
        rx, ry = iso.act_on_base(X[domain.mask], Y[domain.mask])
        half = 0.5 * domain.h
        if (
            rx.min() < domain.xs[0] - half or rx.max() > domain.xs[-1] + half
            or ry.min() < domain.ys[0] - half or ry.max() > domain.ys[-1] + half
        ):
            raise RotationDomainError(f"Rotation by {iso.theta:.6g} moves the domain off the grid")

        indices = ndimage.distance_transform_edt(~domain.mask, return_distances=False, return_indices=True)
        filled = u.values[tuple(indices)]
        spline = RectBivariateSpline(domain.ys, domain.xs, filled, kx=3, ky=3)

        safe = ndimage.binary_erosion(domain.mask, iterations=self.margin_cells) if self.margin_cells else domain.mask
        px, py = iso.inverse_base(X, Y)
        col = np.rint((px - domain.x0) / domain.h).astype(int)
        row = np.rint((py - domain.y0) / domain.h).astype(int)
        inside = (col >= 0) & (col < domain.nx) & (row >= 0) & (row < domain.ny)
        mask = np.zeros(domain.mask.shape, dtype=bool)
        mask[inside] = safe[row[inside], col[inside]]
        rotated_domain = domain.with_mask(mask).pruned()

        values = np.full(mask.shape, np.nan)
        keep = rotated_domain.mask
        values[keep] = spline.ev(py[keep], px[keep]) + iso.shift
        logger.debug(f"Rotated graph by {iso.theta:.6g}: {int(keep.sum())} of {int(domain.mask.sum())} cells kept")
        return ScalarField(rotated_domain, values)

    def equivariance_check(self, pair: DualPair, iso: LiftedIsometry) -> float:
        """max |dual(act(u)) − act_dual(v)| over common cells, modulo an additive constant."""
        moved_source = self.act_on_graph(iso, pair.source)
        moved_target = self.act_on_graph(iso.lift_to_dual(pair.target_params), pair.target)
        dual_of_moved = self.duality.dualize(
            moved_source,
            pair.source_params,
            mean_curvature=pair.source_mean_curvature,
            verify_cmc=False
        )
        common = dual_of_moved.target.domain.mask & moved_target.domain.mask
        difference = (dual_of_moved.target.values - moved_target.values)[common]
        residual = float(np.max(np.abs(difference - difference.mean())))
        logger.info(f"Equivariance residual for theta={iso.theta:.6g}, c={iso.shift:.6g}: {residual:.3e}")
        return residual
