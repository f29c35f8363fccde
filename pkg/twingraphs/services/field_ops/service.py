"""Discrete differential operators on vertical graphs."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from .stencils import cell_divergence, face_frame_components, gradient, lambda_at
from .types import FrameField, FundamentalForm, ScalarField
from ..space_model.service import conformal_factor
from ..space_model.types import CausalCharacter, DomainSpec, SpaceParams
from ...config.config import FieldOpsConfig
from ...exceptions.exceptions import DomainError, NotSpacelikeError

logger = logging.getLogger(__name__)

FaceFluxes = Tuple[np.ndarray, np.ndarray]


def _offending_cells(bad: np.ndarray, limit: int = 20) -> Sequence[Tuple[int, int]]:
    rows, cols = np.nonzero(bad)
    return [(int(r), int(c)) for r, c in zip(rows[:limit], cols[:limit])]


class FieldOpsService:
    """Generalized gradient, mean curvature, angle function and fundamental forms."""

    def __init__(self, config: Optional[FieldOpsConfig] = None):
        self.config = config or FieldOpsConfig()

    @property
    def margin(self) -> float:
        return self.config.spacelike_margin

    def _lambda(self, domain: DomainSpec, params: SpaceParams) -> np.ndarray:
        X, Y = domain.grid()
        lam = np.full(domain.mask.shape, np.nan)
        lam[domain.mask] = conformal_factor(params, X[domain.mask], Y[domain.mask])
        return lam

    def generalized_gradient(self, u: ScalarField, params: SpaceParams) -> FrameField:
        """Frame components of Gu (Riemannian) or G̃v (Lorentzian)."""
        domain = u.domain
        domain.require_in_chart(params.kappa)
        spurs = domain.spur_mask()
        if spurs.any():
            raise DomainError(f"Cells without a neighbour along an axis: {_offending_cells(spurs)}")
        X, Y = domain.grid()
        lam = self._lambda(domain, params)
        ux, uy = gradient(u.values, domain.h)
        eps, tau = params.epsilon, params.bundle
        alpha = ux / lam + eps * tau * Y
        beta = uy / lam - eps * tau * X
        radicand = 1.0 + eps * (alpha ** 2 + beta ** 2)
        if params.is_lorentzian:
            bad = domain.mask & (radicand <= self.margin)
            if bad.any():
                raise NotSpacelikeError(
                    f"Graph is not spacelike in {params.label} on {int(bad.sum())} cells",
                    cells=_offending_cells(bad)
                )
        omega = np.sqrt(np.where(domain.mask, radicand, np.nan))
        return FrameField(domain, alpha, beta, omega, params.causal)

    def face_fluxes(
        self,
        values: np.ndarray,
        domain: DomainSpec,
        params: SpaceParams,
        clip: bool = False
    ) -> Tuple[FaceFluxes, FaceFluxes]:
        """Face fluxes (λα/ω on x-faces, λβ/ω on y-faces) and the face ω arrays.

        With `clip`, Lorentzian faces closer to the light cone than the margin
        are projected back onto it instead of raising.
        """
        (ax, bx, lx), (ay, by, ly) = face_frame_components(values, domain, params)
        eps = params.epsilon
        omegas = []
        for alpha, beta in ((ax, bx), (ay, by)):
            radicand = 1.0 + eps * (alpha ** 2 + beta ** 2)
            if params.is_lorentzian:
                finite = np.isfinite(radicand)
                bad = finite & (radicand <= self.margin)
                if bad.any() and not clip:
                    raise NotSpacelikeError(
                        f"Graph is not spacelike in {params.label} on {int(bad.sum())} faces",
                        cells=_offending_cells(bad)
                    )
                radicand = np.where(bad, self.margin, radicand)
            omegas.append(np.sqrt(radicand))
        wx, wy = omegas
        return (lx * ax / wx, ly * by / wy), (wx, wy)

    def mean_curvature_values(
        self,
        values: np.ndarray,
        domain: DomainSpec,
        params: SpaceParams,
        clip: bool = False
    ) -> np.ndarray:
        (fx, fy), _ = self.face_fluxes(values, domain, params, clip=clip)
        return 0.5 * cell_divergence(fx, fy, domain, params)

    def mean_curvature(self, u: ScalarField, params: SpaceParams) -> ScalarField:
        """H = ½ div(G/ω) in flux form; defined on the interior cells of u's domain."""
        u.domain.require_in_chart(params.kappa)
        H = self.mean_curvature_values(u.values, u.domain, params)
        return ScalarField(u.domain.with_mask(u.domain.interior_mask()), H)

    @staticmethod
    def angle_function(field: FrameField) -> ScalarField:
        """ν = 1/ω (Riemannian, in (0,1]) or ν̃ = 1/ω̃ (Lorentzian, in [1,∞))."""
        return ScalarField(field.domain, 1.0 / field.omega)

    @staticmethod
    def frame_form(field: FrameField) -> FundamentalForm:
        """First fundamental form in the normalised tangent frame."""
        eps = field.epsilon
        a, b = field.alpha, field.beta
        one = np.where(field.domain.mask, 1.0, np.nan)
        return FundamentalForm(field.domain, 1.0 + eps * a * a, eps * a * b, 1.0 + eps * b * b, one)

    def first_fundamental_form(self, u: ScalarField, params: SpaceParams) -> FundamentalForm:
        """Induced metric in the coordinate basis: λ² times the frame-level form."""
        frame = self.frame_form(self.generalized_gradient(u, params))
        scale = self._lambda(u.domain, params) ** 2
        return FundamentalForm(u.domain, scale * frame.e11, scale * frame.e12, scale * frame.e22, scale)

    def differential_from_frame(self, field: FrameField, params: SpaceParams) -> Tuple[np.ndarray, np.ndarray]:
        """(u_x, u_y) of a graph in `params` whose generalized gradient has components `field`."""
        domain = field.domain
        X, Y = domain.grid()
        lam = self._lambda(domain, params)
        eps, tau = params.epsilon, params.bundle
        p = lam * (field.alpha - eps * tau * Y)
        q = lam * (field.beta + eps * tau * X)
        return p, q

    def bundle_flux_residual(
        self,
        params: SpaceParams,
        rectangle: Tuple[float, float, float, float],
        h: float
    ) -> float:
        """|∮ JZ·n + 2τ·Area| over an axis-aligned rectangle (x_min, x_max, y_min, y_max).

        JZ has frame components (−τx, −τy); boundary and area integrals use the
        trapezoidal rule on nodes spaced about h apart.
        """
        x_min, x_max, y_min, y_max = rectangle
        if not (x_max > x_min and y_max > y_min):
            raise DomainError(f"Degenerate rectangle {rectangle}")
        nx = max(int(round((x_max - x_min) / h)), 1) + 1
        ny = max(int(round((y_max - y_min) / h)), 1) + 1
        xs = np.linspace(x_min, x_max, nx)
        ys = np.linspace(y_min, y_max, ny)
        X, Y = np.meshgrid(xs, ys)
        corners = 1.0 + 0.25 * params.kappa * (X ** 2 + Y ** 2)
        if np.any(corners <= 0):
            raise DomainError(f"Rectangle {rectangle} leaves the chart of {params.label}")
        tau = params.bundle
        if tau == 0:
            return 0.0

        def flux_x(x, y):
            return lambda_at(params, x, y) * (-tau * x)

        def flux_y(x, y):
            return lambda_at(params, x, y) * (-tau * y)

        outward = (
            trapezoid(flux_x(np.full_like(ys, x_max), ys), ys)
            - trapezoid(flux_x(np.full_like(ys, x_min), ys), ys)
            + trapezoid(flux_y(xs, np.full_like(xs, y_max)), xs)
            - trapezoid(flux_y(xs, np.full_like(xs, y_min)), xs)
        )
        area = trapezoid(trapezoid(lambda_at(params, X, Y) ** 2, xs, axis=1), ys)
        residual = abs(outward + 2.0 * tau * area)
        logger.debug(f"Bundle flux residual on {rectangle}: {residual:.3e}")
        return float(residual)
