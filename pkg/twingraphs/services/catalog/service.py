"""Closed-form CMC graphs sampled onto grids."""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..field_ops.types import ScalarField
from ..space_model.types import CausalCharacter, DomainSpec, SpaceParams
from ...exceptions.exceptions import DomainError, PreconditionError

logger = logging.getLogger(__name__)

Generator = Callable[[np.ndarray, np.ndarray, float, SpaceParams], np.ndarray]

RIEMANNIAN = CausalCharacter.RIEMANNIAN
LORENTZIAN = CausalCharacter.LORENTZIAN


@dataclass(frozen=True)
class CatalogEntry:
    """A closed-form graph with the space it lives in and its mean curvature."""
    name: str
    generator: Generator
    space: Callable[[float, Optional[SpaceParams]], SpaceParams]
    expected_curvature: Callable[[float], float]
    provenance: str
    validity: Optional[Callable[[np.ndarray, np.ndarray, float, SpaceParams], None]] = None


@dataclass(frozen=True, eq=False)
class CatalogSample:
    name: str
    field: ScalarField
    params: SpaceParams
    mean_curvature: float


def _require_positive(H: float, name: str) -> None:
    if not H > 0:
        raise DomainError(f"{name} needs H > 0, got {H}")


def _hemisphere_profile(w: np.ndarray, H: float, kappa: float) -> np.ndarray:
    a = 4.0 * H * H + kappa
    if kappa == 0:
        return w / a
    if kappa > 0:
        return np.arctanh(w * math.sqrt(kappa / a)) / math.sqrt(a * kappa)
    return np.arctan(w * math.sqrt(-kappa / a)) / math.sqrt(-a * kappa)


def _hemisphere(x, y, H, params):
    w = np.sqrt(1.0 - H * H * (x ** 2 + y ** 2))
    return -4.0 * H * _hemisphere_profile(w, H, params.kappa)


def _hemisphere_validity(x, y, H, params):
    _require_positive(H, "hemisphere")
    if params.bundle != 0:
        raise DomainError(f"hemisphere lives in E(kappa,0), got {params.label}")
    if 4.0 * H * H + params.kappa <= 0:
        raise DomainError(f"hemisphere needs kappa + 4H^2 > 0, got kappa={params.kappa}, H={H}")
    if np.any(H * H * (x ** 2 + y ** 2) >= 1.0):
        raise DomainError(f"hemisphere is only a graph for r < 1/H = {1.0 / H:g}")


def _paraboloid(x, y, H, params):
    return np.sqrt(H ** -2 + x ** 2 + y ** 2)


def _hyperbolic_cylinder(x, y, H, params):
    return np.sqrt(0.25 * H ** -2 + y ** 2)


def _semitrough_parameter(x: float, H: float) -> float:
    """Solve x = (s − ½coth s)/H for s > 0; the right side increases from −∞ to ∞."""
    def residual(s):
        return (s - 0.5 / math.tanh(s)) / H - x

    low, high = 1e-3, 1.0
    while residual(low) > 0:
        low *= 0.5
    while residual(high) < 0:
        high *= 2.0
    return brentq(residual, low, high, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def _semitrough(x, y, H, params):
    s = np.array([_semitrough_parameter(float(xi), H) for xi in np.ravel(x)]).reshape(np.shape(x))
    coth = 1.0 / np.tanh(s)
    return np.sqrt(y ** 2 + coth ** 2 / (4.0 * H * H))


def _nil_hxy(x, y, H, params):
    return H * x * y


def _scherk(x, y, H, params):
    return np.log(np.cos(y) / np.cos(x))


def _scherk_validity(x, y, H, params):
    if np.any(np.abs(x) >= 0.5 * math.pi) or np.any(np.abs(y) >= 0.5 * math.pi):
        raise DomainError("scherk is only defined for |x|, |y| < pi/2")


def _positive(x, y, H, params):
    _require_positive(H, "this example")


def _fixed(kappa: float, bundle: Callable[[float], float], causal: CausalCharacter):
    def space(H: float, params: Optional[SpaceParams]) -> SpaceParams:
        expected = SpaceParams(kappa, bundle(H), causal)
        if params is not None and params != expected:
            raise PreconditionError(f"Example lives in {expected.label}, not {params.label}")
        return expected
    return space


def _given_or_euclidean(H: float, params: Optional[SpaceParams]) -> SpaceParams:
    return params if params is not None else SpaceParams(0.0, 0.0, RIEMANNIAN)


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry(
            "zero_section", lambda x, y, H, p: np.zeros_like(x), _given_or_euclidean, lambda H: 0.0,
            "The slice z = 0; minimal in every E(kappa,tau) and L(kappa,tau)."
        ),
        CatalogEntry(
            "hemisphere", _hemisphere, _given_or_euclidean, lambda H: H,
            "Lower half of the rotational CMC-H sphere of E(kappa,0), dual to the zero section of L(kappa,H).",
            _hemisphere_validity
        ),
        CatalogEntry(
            "paraboloid", _paraboloid, _fixed(0.0, lambda H: 0.0, LORENTZIAN), lambda H: H,
            "Hyperbolic plane sqrt(H^-2 + r^2) in L3, dual to the zero section of Nil3(H).",
            _positive
        ),
        CatalogEntry(
            "hyperbolic_cylinder", _hyperbolic_cylinder, _fixed(0.0, lambda H: 0.0, LORENTZIAN), lambda H: H,
            "Hyperbolic cylinder sqrt((2H)^-2 + y^2) in L3.",
            _positive
        ),
        CatalogEntry(
            "semitrough", _semitrough, _fixed(0.0, lambda H: 0.0, LORENTZIAN), lambda H: H,
            "Semitrough of L3, resampled from x = (s - coth(s)/2)/H, v = sqrt(y^2 + coth(s)^2/(4H^2)).",
            _positive
        ),
        CatalogEntry(
            "nil_hxy", _nil_hxy, _fixed(0.0, lambda H: H, RIEMANNIAN), lambda H: 0.0,
            "Invariant minimal surface u = Hxy of Nil3(H)."
        ),
        CatalogEntry(
            "scherk", _scherk, _fixed(0.0, lambda H: 0.0, RIEMANNIAN), lambda H: 0.0,
            "Scherk patch log(cos y / cos x), minimal in R3.",
            _scherk_validity
        ),
    )
}

DUAL_PAIRS: List[Tuple[str, str]] = [
    ("hemisphere", "zero_section"),
    ("zero_section", "paraboloid"),
]


def names() -> List[str]:
    return sorted(CATALOG)


def generate(
    name: str,
    domain: DomainSpec,
    mean_curvature: float = 1.0,
    params: Optional[SpaceParams] = None
) -> CatalogSample:
    """Sample the closed form `name` on the unmasked cells of `domain`."""
    if name not in CATALOG:
        raise PreconditionError(f"Unknown example {name!r}; choose from {', '.join(names())}")
    entry = CATALOG[name]
    H = float(mean_curvature)
    space = entry.space(H, params)
    domain.require_in_chart(space.kappa)
    X, Y = domain.grid()
    x, y = X[domain.mask], Y[domain.mask]
    if entry.validity is not None:
        entry.validity(x, y, H, space)
    values = np.full(domain.mask.shape, np.nan)
    values[domain.mask] = entry.generator(x, y, H, space)
    logger.info(f"Generated example {name} (H={H:g}) in {space.label} on {x.size} cells")
    return CatalogSample(name, ScalarField(domain, values), space, entry.expected_curvature(H))
