"""Numeric verifiers for flux identities, gradient estimates and growth bounds."""

import math
import logging
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .reports import CoareaResult, EstimateReport
from ..field_ops.service import FieldOpsService
from ..field_ops.stencils import face_frame_components, gradient, lambda_at
from ..field_ops.types import ScalarField
from ..space_model.types import SpaceParams
from ...config.config import AnalysisConfig
from ...exceptions.exceptions import DomainError, NotMinimalError, PreconditionError
from ...utils.shapes import disk_coverage

logger = logging.getLogger(__name__)


def _outward_flux(flux_x: np.ndarray, flux_y: np.ndarray, region: np.ndarray, h: float) -> float:
    """h·Σ of face fluxes leaving `region` (sign +1 on east/north faces)."""
    left, right = region[:, :-1], region[:, 1:]
    below, above = region[:-1, :], region[1:, :]
    total = (
        flux_x[left & ~right].sum() - flux_x[right & ~left].sum()
        + flux_y[below & ~above].sum() - flux_y[above & ~below].sum()
    )
    return float(h * total)


def _divergence_sum(flux_x: np.ndarray, flux_y: np.ndarray, region: np.ndarray, h: float) -> float:
    """h·Σ over region cells of (F_e − F_w + F_n − F_s); region must avoid the grid edge."""
    net = np.zeros(region.shape)
    net[1:-1, 1:-1] = (
        flux_x[1:-1, 1:] - flux_x[1:-1, :-1]
        + flux_y[1:, 1:-1] - flux_y[:-1, 1:-1]
    )
    return float(h * net[region].sum())


class AnalysisService:
    """Heinz flux, Cheng–Yau, Heisenberg growth, coarea and angle-integrability verifiers."""

    def __init__(self, config: Optional[AnalysisConfig] = None, field_ops: Optional[FieldOpsService] = None):
        self.config = config or AnalysisConfig()
        self.field_ops = field_ops or FieldOpsService()
        logger.info("AnalysisService initialized successfully")

    def _disk(self, u: ScalarField, radius: float) -> np.ndarray:
        domain = u.domain
        disk = domain.mask & (domain.radius_squared() <= radius ** 2 * (1 + 1e-12))
        if not disk.any():
            raise DomainError(f"Disk of radius {radius} contains no cells")
        if (disk & ~domain.interior_mask()).any():
            raise DomainError(f"Disk of radius {radius} is not contained in the interior of the mask")
        return disk

    def _cell_area(self, u: ScalarField, params: SpaceParams) -> np.ndarray:
        X, Y = u.domain.grid()
        return u.domain.h ** 2 * lambda_at(params, X, Y) ** 2

    @staticmethod
    def _circle_length(params: SpaceParams, radius: float) -> float:
        return 2.0 * math.pi * radius * float(lambda_at(params, np.array(radius), np.array(0.0)))

    def _core_curvature(self, u: ScalarField, params: SpaceParams) -> np.ndarray:
        core = u.domain.core_mask(1)
        if not core.any():
            raise PreconditionError("Domain has no core cells to measure curvature on")
        return self.field_ops.mean_curvature(u, params).values[core]

    def _require_minimal(self, u: ScalarField, params: SpaceParams) -> None:
        H = self._core_curvature(u, params)
        if np.max(np.abs(H)) > self.config.minimal_tolerance:
            raise NotMinimalError(
                f"Graph is not minimal: |H| reaches {np.max(np.abs(H)):.3e}",
                curvature_range=(float(H.min()), float(H.max()))
            )

    def _flux_disk_checks(
        self,
        name: str,
        u: ScalarField,
        params: SpaceParams,
        radii: Sequence[float],
        flux_x: np.ndarray,
        flux_y: np.ndarray,
        expected_density: float
    ) -> EstimateReport:
        """Shared body of the two flux mechanisms: flux ≈ expected_density·Area, |flux| ≤ Length."""
        h = u.domain.h
        area_cells = self._cell_area(u, params)
        violations: List[float] = []
        details: List[Dict[str, Any]] = []
        for radius in radii:
            disk = self._disk(u, radius)
            flux = _outward_flux(flux_x, flux_y, disk, h)
            conservation = abs(flux - _divergence_sum(flux_x, flux_y, disk, h))
            area = float(area_cells[disk].sum())
            length = self._circle_length(params, radius)
            mismatch = abs(expected_density * area - flux)
            tolerance = self.config.flux_tolerance_factor * h * max(1.0, length)
            violations += [
                conservation - self.config.conservation_tolerance * max(1.0, abs(flux)),
                mismatch - tolerance,
                abs(flux) - length,
                abs(expected_density) * area - length,
            ]
            details.append({
                "radius": radius, "flux": flux, "area": area, "length": length,
                "conservation_residual": conservation, "flux_mismatch": mismatch,
                "slack": length - abs(flux),
            })
            logger.debug(f"{name} R={radius}: flux={flux:.6g} area={area:.6g} length={length:.6g}")
        witnesses = {
            "max_flux_mismatch": max(d["flux_mismatch"] for d in details),
            "max_conservation_residual": max(d["conservation_residual"] for d in details),
            "min_slack": min(d["slack"] for d in details),
        }
        return EstimateReport.from_violations(name, violations, witnesses, details)

    def heinz_flux_check(
        self,
        u: ScalarField,
        params: SpaceParams,
        radii: Sequence[float],
        mean_curvature: Optional[float] = None
    ) -> EstimateReport:
        """Flux of G/ω across disk boundaries against 2H·Area and the boundary length."""
        H = float(np.mean(self._core_curvature(u, params))) if mean_curvature is None else mean_curvature
        (flux_x, flux_y), _ = self.field_ops.face_fluxes(u.values, u.domain, params)
        report = self._flux_disk_checks("heinz", u, params, radii, flux_x, flux_y, 2.0 * H)
        report.witnesses["mean_curvature"] = H
        return report

    def direct_divergence_check(self, v: ScalarField, params: SpaceParams, radii: Sequence[float]) -> EstimateReport:
        """Flux of −J·G̃v across disk boundaries against 2τ·Area and the boundary length."""
        if not params.is_lorentzian:
            raise PreconditionError("direct divergence check needs a Lorentzian space")
        self.field_ops.generalized_gradient(v, params)
        (ax, bx, lx), (ay, by, ly) = face_frame_components(v.values, v.domain, params)
        report = self._flux_disk_checks(
            "direct_divergence", v, params, radii, lx * bx, -ly * ay, 2.0 * params.bundle
        )
        report.witnesses["bundle"] = params.bundle
        return report

    def cheng_yau_check(self, v: ScalarField, params: SpaceParams, radii: Optional[Sequence[float]] = None) -> EstimateReport:
        """Empirical A* = min ω̃²(1+r²)² over nested windows of a spacelike CMC graph in L(0,τ)."""
        if not params.is_lorentzian or params.kappa != 0:
            raise PreconditionError(f"Cheng-Yau check needs L(0,tau), got {params.label}")
        frame = self.field_ops.generalized_gradient(v, params)
        H = float(np.mean(self._core_curvature(v, params)))
        if H <= self.config.minimal_tolerance:
            raise PreconditionError(f"Cheng-Yau check needs positive mean curvature, got H={H:.3e}")

        domain = v.domain
        r2 = domain.radius_squared()
        if radii is None:
            radii = [float(np.sqrt(r2[domain.mask].max()))]
        weighted = frame.omega ** 2 * (1.0 + r2) ** 2
        vx, vy = gradient(v.values, domain.h)
        X, Y = domain.grid()
        support = v.values - X * vx - Y * vy

        violations: List[float] = []
        details: List[Dict[str, Any]] = []
        for radius in sorted(radii):
            window = domain.mask & (r2 <= radius ** 2 * (1 + 1e-12))
            if not window.any():
                raise DomainError(f"Window of radius {radius} contains no cells")
            a_star = float(weighted[window].min())
            violations.append(-a_star)
            details.append({"radius": radius, "A_star": a_star, "min_support": float(support[window].min())})
        witnesses = {"A_star": details[-1]["A_star"], "mean_curvature": H}
        return EstimateReport.from_violations("cheng_yau", violations, witnesses, details)

    def nil_growth_check(self, u: ScalarField, params: SpaceParams, radii: Sequence[float]) -> EstimateReport:
        """Witnesses B* = max|Gu|/(1+r²) and C* = max|u|/(1+r²)^{3/2}, stable beyond the burn-in radius."""
        if params.is_lorentzian or params.kappa != 0:
            raise PreconditionError(f"Growth check needs Nil3(tau) = E(0,tau), got {params.label}")
        self._require_minimal(u, params)
        domain = u.domain
        frame = self.field_ops.generalized_gradient(u, params)
        r2 = domain.radius_squared()
        b_density = frame.norm / (1.0 + r2)
        c_density = np.abs(u.values) / (1.0 + r2) ** 1.5

        details: List[Dict[str, Any]] = []
        inner = 0.0
        for radius in sorted(radii):
            annulus = domain.mask & (r2 > inner ** 2) & (r2 <= radius ** 2 * (1 + 1e-12))
            window = domain.mask & (r2 <= radius ** 2 * (1 + 1e-12))
            if not annulus.any():
                raise DomainError(f"Annulus ({inner}, {radius}] contains no cells")
            details.append({
                "inner_radius": inner,
                "radius": radius,
                "B_annulus": float(b_density[annulus].max()),
                "C_annulus": float(c_density[annulus].max()),
                "B_star": float(b_density[window].max()),
                "C_star": float(c_density[window].max()),
            })
            inner = radius

        slack = 1.0 + self.config.growth_slack
        violations: List[float] = []
        for previous, current in zip(details, details[1:]):
            if previous["inner_radius"] < self.config.growth_burn_in:
                continue
            for key in ("B_annulus", "C_annulus"):
                violations.append(current[key] - slack * previous[key] - 1e-12)
        if not all(math.isfinite(d["B_star"]) and math.isfinite(d["C_star"]) for d in details):
            violations.append(math.inf)
        witnesses = {"B_star": details[-1]["B_star"], "C_star": details[-1]["C_star"]}
        return EstimateReport.from_violations("nil_growth", violations, witnesses, details)

    def coarea_identity(
        self,
        u: ScalarField,
        params: SpaceParams,
        f: ScalarField,
        region_radius: Optional[float] = None
    ) -> CoareaResult:
        """Compare ∫_graph (f∘π)ν dA_graph with ∫_Ω f dA_base.

        With `region_radius` both integrals run over the disk r ≤ region_radius
        using fractional cell coverage; otherwise over the whole mask.
        """
        domain = u.domain
        if not f.domain.same_grid(domain):
            raise DomainError("Test function is sampled on a different grid")
        if region_radius is None:
            weights = domain.mask.astype(float)
        else:
            weights = disk_coverage(domain, region_radius)
            if ((weights > 0) & ~domain.mask).any():
                raise DomainError(f"Disk of radius {region_radius} is not covered by the mask")
        support = weights > 0
        if not np.all(np.isfinite(f.values[support])):
            raise DomainError("Test function is undefined on part of the integration region")

        frame = self.field_ops.generalized_gradient(u, params)
        nu = self.field_ops.angle_function(frame).values
        form = self.field_ops.first_fundamental_form(u, params)
        h2 = domain.h ** 2
        graph_side = float(np.sum((f.values * nu * np.sqrt(form.determinant()) * h2 * weights)[support]))
        base_side = float(np.sum((f.values * self._cell_area(u, params) * weights)[support]))
        return CoareaResult(graph_side=graph_side, base_side=base_side, residual=abs(graph_side - base_side))

    def angle_integrability_check(
        self,
        u: Union[ScalarField, Sequence[ScalarField]],
        params: SpaceParams,
        radii: Sequence[float]
    ) -> EstimateReport:
        """Growth of I(R) = ∫_{D_R} ν over growing windows; divergent signature if it grows at least like log R.

        `u` is one field covering every window or one field per radius.
        """
        if params.is_lorentzian:
            raise PreconditionError("Angle integrability check needs a Riemannian space")
        radii = list(radii)
        fields = list(u) if isinstance(u, (list, tuple)) else [u] * len(radii)
        if len(fields) != len(radii) or len(radii) < 2:
            raise PreconditionError("Angle integrability check needs one field per radius and at least two radii")

        details: List[Dict[str, Any]] = []
        checked = set()
        for field, radius in sorted(zip(fields, radii), key=lambda pair: pair[1]):
            if id(field) not in checked:
                self._require_minimal(field, params)
                checked.add(id(field))
            domain = field.domain
            window = domain.mask & (domain.radius_squared() <= radius ** 2 * (1 + 1e-12))
            frame = self.field_ops.generalized_gradient(field, params)
            nu = self.field_ops.angle_function(frame).values
            form = self.field_ops.first_fundamental_form(field, params)
            integral = float(np.sum((nu * self._cell_area(field, params))[window]))
            nu_squared = float(np.sum((nu ** 2 * np.sqrt(form.determinant()) * domain.h ** 2)[window]))
            details.append({"radius": radius, "integral": integral, "nu_squared_graph_integral": nu_squared})

        rates = [
            (b["integral"] - a["integral"]) / (math.log(b["radius"]) - math.log(a["radius"]))
            for a, b in zip(details, details[1:])
        ]
        violations = [-min(rates), self.config.angle_slope_ratio * rates[0] - rates[-1]]
        witnesses = {
            "integral": details[-1]["integral"],
            "nu_squared_graph_integral": details[-1]["nu_squared_graph_integral"],
            "first_log_rate": rates[0],
            "last_log_rate": rates[-1],
        }
        return EstimateReport.from_violations("angle_integrability", violations, witnesses, details)
