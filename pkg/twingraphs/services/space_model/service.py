"""Space-level geometry of the coordinate models and the Lorentzian classification."""

import math
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from .types import CausalCharacter, FeasibilityVerdict, SpaceParams
from ...exceptions.exceptions import DomainError, InfeasibleTargetError, PreconditionError

logger = logging.getLogger(__name__)

DISCRIMINANT_ATOL = 1e-12

ArrayLike = Union[float, np.ndarray]


def chart_radius(kappa: float) -> float:
    """Radius of Ω_κ: 2/√(−κ) for κ < 0, unbounded otherwise."""
    return 2.0 / math.sqrt(-kappa) if kappa < 0 else math.inf


def conformal_factor(params: SpaceParams, x: ArrayLike, y: ArrayLike) -> ArrayLike:
    """λ_κ(x, y) = 1 / (1 + κ(x²+y²)/4), scalar or element-wise."""
    denominator = 1.0 + 0.25 * params.kappa * (np.asarray(x, dtype=float) ** 2 + np.asarray(y, dtype=float) ** 2)
    if np.any(denominator <= 0):
        raise DomainError(f"Point lies outside the chart of {params.label}")
    value = 1.0 / denominator
    return float(value) if np.ndim(value) == 0 else value


def metric_eval(
    params: SpaceParams,
    point: Sequence[float],
    vector: Sequence[float]
) -> float:
    """Squared length of `vector` at `point` under the E- or L-metric.

    E: λ²(a²+b²) + (c + τλ(ya − xb))²
    L: λ²(a²+b²) − (c − τλ(ya − xb))²
    """
    x, y, _ = point
    a, b, c = vector
    lam = conformal_factor(params, x, y)
    eps = params.epsilon
    fiber = c + eps * params.bundle * lam * (y * a - x * b)
    return lam ** 2 * (a * a + b * b) + eps * fiber ** 2


def cheeger_constant(kappa: float) -> float:
    """Infimum of Length(∂D)/Area(D) over bounded domains of M²(κ)."""
    return 0.0 if kappa >= 0 else 0.5 * math.sqrt(-kappa)


def critical_discriminant(params: SpaceParams) -> float:
    return params.discriminant


def discriminant_sign(value: float, atol: float = DISCRIMINANT_ATOL) -> int:
    """Sign of a discriminant with values within `atol` of zero counted as critical."""
    if abs(value) <= atol:
        return 0
    return 1 if value > 0 else -1


def _require_lorentzian(params: SpaceParams) -> None:
    if params.causal is not CausalCharacter.LORENTZIAN:
        raise PreconditionError(f"{params.label} is not a Lorentzian space")


def timelike_circle_range(params: SpaceParams) -> Optional[Tuple[float, float]]:
    """Radii r for which the horizontal circle of radius r is a closed timelike curve.

    Along γ(t) = (r cos t, r sin t, 0) one has ⟨γ', γ'⟩ = λ²r²(1 − τ²r²), so the
    circle is timelike for r > 1/|τ| inside the chart. Returns None when empty.

    With τ = 0 every horizontal circle is spacelike, so the range is empty
    even when κ > 0 makes κ + 4τ² positive.
    """
    _require_lorentzian(params)
    if params.bundle == 0 or discriminant_sign(params.discriminant) <= 0:
        return None
    lower = 1.0 / abs(params.bundle)
    upper = chart_radius(params.kappa)
    if lower >= upper:
        return None
    return lower, upper


def existence_classifier(params: SpaceParams) -> FeasibilityVerdict:
    """Classify L(κ,τ) by the sign of κ + 4τ²."""
    _require_lorentzian(params)
    sign = discriminant_sign(params.discriminant)
    if sign == 0:
        return FeasibilityVerdict.CRITICAL_REGIME
    if sign < 0:
        return FeasibilityVerdict.SUBCRITICAL_REGIME
    if params.kappa <= 0:
        return FeasibilityVerdict.NO_COMPLETE_SPACELIKE
    return FeasibilityVerdict.OUTSIDE_HYPOTHESIS


def daniel_parameter_map(kappa1: float, tau1: float, h1: float, tau2: float) -> Tuple[float, float]:
    """Return (κ₂, H₂) with κ₂ − 4τ₂² = κ₁ − 4τ₁² and τ₂² + H₂² = τ₁² + H₁².

    H₂ is returned nonnegative; −H₂ is congruent by a change of orientation.
    """
    radicand = tau1 ** 2 + h1 ** 2 - tau2 ** 2
    if radicand < 0:
        raise InfeasibleTargetError(
            f"No real mean curvature for tau2={tau2}: tau1^2 + H1^2 - tau2^2 = {radicand}"
        )
    kappa2 = kappa1 - 4.0 * tau1 ** 2 + 4.0 * tau2 ** 2
    return kappa2, math.sqrt(radicand)


def spacelike_disk_bound(params: SpaceParams) -> float:
    """Largest coordinate radius R of a disk carrying a spacelike graph.

    A λ-disk has Area = πR²λ(R) and Length = 2πRλ(R), so 2|τ|·Area ≤ Length
    reduces to R ≤ 1/|τ|. The result is clipped to the chart radius.
    """
    bound = math.inf if params.bundle == 0 else 1.0 / abs(params.bundle)
    return min(bound, chart_radius(params.kappa))


class NonexistenceMechanisms(BaseModel):
    """Outcome of the three obstructions to complete spacelike surfaces."""
    discriminant: float
    cheeger_constant: float
    cheeger_obstruction: bool
    disk_radius_bound: float
    disk_bound_obstruction: bool
    timelike_circles: Optional[Tuple[float, float]]
    timelike_circle_obstruction: bool


def nonexistence_mechanisms(params: SpaceParams) -> NonexistenceMechanisms:
    """Evaluate the Cheeger, isoperimetric and timelike-circle obstructions."""
    _require_lorentzian(params)
    cheeger = cheeger_constant(params.kappa)
    bound = spacelike_disk_bound(params)
    circles = timelike_circle_range(params)
    report = NonexistenceMechanisms(
        discriminant=params.discriminant,
        cheeger_constant=cheeger,
        cheeger_obstruction=2.0 * abs(params.bundle) > cheeger + DISCRIMINANT_ATOL,
        disk_radius_bound=bound,
        disk_bound_obstruction=bound < chart_radius(params.kappa),
        timelike_circles=circles,
        timelike_circle_obstruction=circles is not None,
    )
    logger.debug(f"Nonexistence mechanisms for {params.label}: {report}")
    return report


def space_name(params: SpaceParams) -> str:
    """Conventional name of the model space."""
    kappa, tau = params.kappa, params.bundle
    if params.causal is CausalCharacter.RIEMANNIAN:
        if kappa == 0:
            return "R3" if tau == 0 else f"Nil3({tau:g})"
        if kappa < 0:
            return f"H2({kappa:g})xR" if tau == 0 else f"SL2~({kappa:g},{tau:g})"
        if tau == 0:
            return f"S2({kappa:g})xR"
        if discriminant_sign(params.discriminant) == 0:
            return f"S3({kappa:g})"
        return f"Berger sphere({kappa:g},{tau:g})"
    if kappa == 0:
        return "L3" if tau == 0 else f"Nil3_1({tau:g})"
    if kappa < 0 and discriminant_sign(params.discriminant) == 0:
        return f"H3_1({kappa:g})"
    if kappa < 0:
        return f"H2({kappa:g})xR_1" if tau == 0 else f"SL2~_1({kappa:g},{tau:g})"
    return f"S2({kappa:g})xR_1" if tau == 0 else f"Berger spacetime({kappa:g},{tau:g})"
