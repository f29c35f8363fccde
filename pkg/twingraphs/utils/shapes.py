"""Parsing of command-line shape, boundary and anchor arguments, and disk coverage weights."""

import math
from typing import Callable, Tuple

import numpy as np

from ..exceptions.exceptions import DomainError, GridFormatError
from ..services.space_model.types import Cell, DomainSpec

BoundaryFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _numbers(text: str, count: int, what: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise GridFormatError(f"Malformed {what}: {text!r}")
    if len(values) != count or not all(math.isfinite(v) for v in values):
        raise GridFormatError(f"Malformed {what}: {text!r}")
    return values


def parse_shape(spec: str, h: float) -> DomainSpec:
    """`disk:R` (centered disk) or `rect:a,b` (centered rectangle [−a,a]×[−b,b])."""
    kind, _, args = spec.partition(":")
    if kind == "disk":
        (radius,) = _numbers(args, 1, "disk shape")
        if radius <= 0:
            raise DomainError(f"Disk radius must be positive, got {radius}")
        return DomainSpec.centered_disk(radius, h, pad=1)
    if kind == "rect":
        a, b = _numbers(args, 2, "rect shape")
        if a <= 0 or b <= 0:
            raise DomainError(f"Rectangle half-sides must be positive, got {a},{b}")
        return DomainSpec.centered_rectangle(a, b, h)
    raise GridFormatError(f"Unknown shape {spec!r}; expected disk:R or rect:a,b")


def parse_boundary(spec: str) -> BoundaryFunction:
    """`const:c` boundary data."""
    kind, _, args = spec.partition(":")
    if kind != "const":
        raise GridFormatError(f"Unknown boundary condition {spec!r}; expected const:c")
    (value,) = _numbers(args, 1, "boundary condition")
    return lambda x, y: np.full_like(np.asarray(x, dtype=float), value)


def parse_anchor(spec: str) -> Cell:
    """`cx,cy` column and row indices, returned as a (row, col) cell."""
    try:
        col, row = (int(part) for part in spec.split(","))
    except ValueError:
        raise GridFormatError(f"Malformed anchor {spec!r}; expected cx,cy")
    return row, col


def parse_radii(spec: str) -> Tuple[float, ...]:
    try:
        radii = tuple(float(part) for part in spec.split(","))
    except ValueError:
        raise GridFormatError(f"Malformed radii list {spec!r}")
    if not radii or any(r <= 0 for r in radii):
        raise GridFormatError(f"Radii must be positive: {spec!r}")
    return radii


def disk_coverage(domain: DomainSpec, radius: float, samples: int = 16) -> np.ndarray:
    """Fraction of each cell's h×h square lying in the disk r ≤ radius, by sub-sampling."""
    h = domain.h
    offsets = (np.arange(samples) + 0.5) / samples - 0.5
    X, Y = domain.grid()
    coverage = np.zeros(X.shape)
    for dy in offsets:
        for dx in offsets:
            coverage += (X + dx * h) ** 2 + (Y + dy * h) ** 2 <= radius ** 2
    return coverage / samples ** 2
