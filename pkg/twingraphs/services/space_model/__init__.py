"""Coordinate models of E(κ,τ) and L(κ,τ)."""

from .types import Cell, CausalCharacter, DomainSpec, FeasibilityVerdict, SpaceParams
from .service import (
    NonexistenceMechanisms,
    chart_radius,
    cheeger_constant,
    conformal_factor,
    critical_discriminant,
    daniel_parameter_map,
    discriminant_sign,
    existence_classifier,
    metric_eval,
    nonexistence_mechanisms,
    space_name,
    spacelike_disk_bound,
    timelike_circle_range,
)

__all__ = [
    'Cell',
    'CausalCharacter',
    'DomainSpec',
    'FeasibilityVerdict',
    'SpaceParams',
    'NonexistenceMechanisms',
    'chart_radius',
    'cheeger_constant',
    'conformal_factor',
    'critical_discriminant',
    'daniel_parameter_map',
    'discriminant_sign',
    'existence_classifier',
    'metric_eval',
    'nonexistence_mechanisms',
    'space_name',
    'spacelike_disk_bound',
    'timelike_circle_range',
]
