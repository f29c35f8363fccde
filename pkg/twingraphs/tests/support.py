"""Shared parameters and measurements for the test suite."""

import numpy as np

from twingraphs.services.space_model.types import CausalCharacter, DomainSpec, SpaceParams

R3 = SpaceParams(0.0, 0.0, CausalCharacter.RIEMANNIAN)
L3 = SpaceParams(0.0, 0.0, CausalCharacter.LORENTZIAN)


def nil(tau: float) -> SpaceParams:
    return SpaceParams(0.0, tau, CausalCharacter.RIEMANNIAN)


def riemannian(kappa: float, tau: float) -> SpaceParams:
    return SpaceParams(kappa, tau, CausalCharacter.RIEMANNIAN)


def lorentz(kappa: float, tau: float) -> SpaceParams:
    return SpaceParams(kappa, tau, CausalCharacter.LORENTZIAN)


def core_error(values: np.ndarray, domain: DomainSpec, expected=0.0, depth: int = 1) -> float:
    """Sup of |values − expected| over the core cells of `domain`."""
    core = domain.core_mask(depth)
    target = np.broadcast_to(np.asarray(expected, dtype=float), core.shape)
    return float(np.max(np.abs(np.asarray(values)[core] - target[core])))


def gauge_free_error(values: np.ndarray, expected: np.ndarray, mask: np.ndarray) -> float:
    """Sup of |values − expected − c| with c the mean offset over `mask`."""
    difference = (np.asarray(values) - np.asarray(expected))[mask]
    return float(np.max(np.abs(difference - difference.mean())))
