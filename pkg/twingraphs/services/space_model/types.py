"""Value types for the coordinate models of E(κ,τ) and L(κ,τ)."""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Tuple

import numpy as np
from scipy import ndimage

from ...exceptions.exceptions import DomainError, TopologyError

Cell = Tuple[int, int]


class CausalCharacter(str, Enum):
    """Causal character of the Killing fibers."""
    RIEMANNIAN = "riemannian"
    LORENTZIAN = "lorentzian"

    @property
    def flipped(self) -> "CausalCharacter":
        if self is CausalCharacter.RIEMANNIAN:
            return CausalCharacter.LORENTZIAN
        return CausalCharacter.RIEMANNIAN


class FeasibilityVerdict(str, Enum):
    """Verdicts of the Lorentzian existence classifier."""
    NO_COMPLETE_SPACELIKE = "NoCompleteSpacelike"
    CRITICAL_REGIME = "CriticalRegime"
    SUBCRITICAL_REGIME = "SubcriticalRegime"
    OUTSIDE_HYPOTHESIS = "OutsideTheoremHypothesis"


@dataclass(frozen=True)
class SpaceParams:
    """Selects E(κ, bundle) or L(κ, bundle).

    For κ > 0 the chart omits one fiber (the antipode of the origin);
    every operation works in the Ω_κ chart.
    """
    kappa: float
    bundle: float
    causal: CausalCharacter = CausalCharacter.RIEMANNIAN

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and math.isfinite(self.bundle)):
            raise DomainError(f"Space parameters must be finite: kappa={self.kappa}, bundle={self.bundle}")
        object.__setattr__(self, "causal", CausalCharacter(self.causal))

    @property
    def epsilon(self) -> int:
        return 1 if self.causal is CausalCharacter.RIEMANNIAN else -1

    @property
    def is_lorentzian(self) -> bool:
        return self.causal is CausalCharacter.LORENTZIAN

    @property
    def discriminant(self) -> float:
        """κ − 4·bundle² (Riemannian) or κ + 4·bundle² (Lorentzian)."""
        return self.kappa - self.epsilon * 4.0 * self.bundle ** 2

    def dual(self, mean_curvature: float) -> "SpaceParams":
        """Parameters of the twin space: same κ, bundle = H, flipped character."""
        return SpaceParams(self.kappa, float(mean_curvature), self.causal.flipped)

    @property
    def label(self) -> str:
        letter = "E" if self.causal is CausalCharacter.RIEMANNIAN else "L"
        return f"{letter}({self.kappa:g},{self.bundle:g})"


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """Masked uniform grid; arrays are indexed (row, col) with x = x0 + col·h, y = y0 + row·h."""
    x0: float
    y0: float
    h: float
    nx: int
    ny: int
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError(f"Grid spacing must be positive, got {self.h}")
        if self.nx < 1 or self.ny < 1:
            raise DomainError(f"Grid must have at least one cell, got {self.nx}x{self.ny}")
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (self.ny, self.nx):
            raise DomainError(f"Mask shape {mask.shape} does not match grid {(self.ny, self.nx)}")
        mask = mask.copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def rectangle(cls, x_min: float, x_max: float, y_min: float, y_max: float, h: float) -> "DomainSpec":
        nx = int(round((x_max - x_min) / h)) + 1
        ny = int(round((y_max - y_min) / h)) + 1
        return cls(x_min, y_min, h, nx, ny, np.ones((ny, nx), dtype=bool))

    @classmethod
    def centered_disk(cls, radius: float, h: float, pad: int = 2) -> "DomainSpec":
        """Nodes with r ≤ radius on a grid symmetric about the origin."""
        n = int(math.floor(radius / h + 1e-9)) + pad
        coords = h * np.arange(-n, n + 1)
        X, Y = np.meshgrid(coords, coords)
        mask = X ** 2 + Y ** 2 <= radius ** 2 * (1 + 1e-12)
        return cls(-n * h, -n * h, h, 2 * n + 1, 2 * n + 1, mask).pruned()

    @classmethod
    def centered_rectangle(cls, half_width: float, half_height: float, h: float) -> "DomainSpec":
        nx = int(math.floor(half_width / h + 1e-9))
        ny = int(math.floor(half_height / h + 1e-9))
        return cls(-nx * h, -ny * h, h, 2 * nx + 1, 2 * ny + 1, np.ones((2 * ny + 1, 2 * nx + 1), dtype=bool))

    @property
    def xs(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.nx)

    @property
    def ys(self) -> np.ndarray:
        return self.y0 + self.h * np.arange(self.ny)

    def grid(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.xs, self.ys)

    def radius_squared(self) -> np.ndarray:
        X, Y = self.grid()
        return X ** 2 + Y ** 2

    def with_mask(self, mask: np.ndarray) -> "DomainSpec":
        return replace(self, mask=mask)

    def interior_mask(self) -> np.ndarray:
        """Unmasked cells whose four neighbours are unmasked."""
        m = self.mask
        inner = np.zeros_like(m)
        inner[1:-1, 1:-1] = (
            m[1:-1, 1:-1] & m[2:, 1:-1] & m[:-2, 1:-1] & m[1:-1, 2:] & m[1:-1, :-2]
        )
        return inner

    def spur_mask(self) -> np.ndarray:
        """Unmasked cells with no unmasked neighbour along x or along y."""
        padded = np.pad(self.mask, 1, constant_values=False)
        has_x = padded[1:-1, 2:] | padded[1:-1, :-2]
        has_y = padded[2:, 1:-1] | padded[:-2, 1:-1]
        return self.mask & ~(has_x & has_y)

    def pruned(self) -> "DomainSpec":
        """Repeatedly drop spur cells so every cell admits a derivative along both axes."""
        domain = self
        spurs = domain.spur_mask()
        while spurs.any():
            domain = domain.with_mask(domain.mask & ~spurs)
            spurs = domain.spur_mask()
        return domain

    def boundary_mask(self) -> np.ndarray:
        return self.mask & ~self.interior_mask()

    def core_mask(self, depth: int = 1) -> np.ndarray:
        """Interior cells eroded `depth` more times (full 3x3 neighbourhoods)."""
        core = self.interior_mask()
        if depth > 0:
            core = ndimage.binary_erosion(core, structure=np.ones((3, 3), dtype=bool), iterations=depth)
        return core

    def subsample(self, step: int = 2) -> "DomainSpec":
        mask = self.mask[::step, ::step]
        return DomainSpec(self.x0, self.y0, self.h * step, mask.shape[1], mask.shape[0], mask)

    def is_connected(self) -> bool:
        _, count = ndimage.label(self.mask)
        return count == 1

    def is_simply_connected(self) -> bool:
        """Connected under 4-adjacency with a complement that has no bounded component."""
        if not self.is_connected():
            return False
        padded = np.pad(~self.mask, 1, constant_values=True)
        _, holes = ndimage.label(padded, structure=np.ones((3, 3), dtype=bool))
        return holes == 1

    def require_simply_connected(self) -> None:
        if not self.is_simply_connected():
            raise TopologyError("Working domain must be connected and simply connected")

    def require_in_chart(self, kappa: float) -> None:
        """Every unmasked cell satisfies 1 + (κ/4)(x²+y²) > 0."""
        outside = self.mask & (1.0 + 0.25 * kappa * self.radius_squared() <= 0)
        if outside.any():
            raise DomainError(f"{int(outside.sum())} unmasked cells lie outside the chart for kappa={kappa}")

    def nearest_cell(self, x: float, y: float) -> Cell:
        """Unmasked cell nearest to the point (x, y)."""
        if not self.mask.any():
            raise DomainError("Domain has no unmasked cells")
        X, Y = self.grid()
        d2 = np.where(self.mask, (X - x) ** 2 + (Y - y) ** 2, np.inf)
        row, col = np.unravel_index(int(np.argmin(d2)), d2.shape)
        return int(row), int(col)

    def centroid_cell(self) -> Cell:
        X, Y = self.grid()
        return self.nearest_cell(float(X[self.mask].mean()), float(Y[self.mask].mean()))

    def contains_cell(self, cell: Cell) -> bool:
        row, col = cell
        return 0 <= row < self.ny and 0 <= col < self.nx and bool(self.mask[row, col])

    def same_grid(self, other: "DomainSpec") -> bool:
        return (
            self.nx == other.nx and self.ny == other.ny
            and math.isclose(self.x0, other.x0, abs_tol=1e-12)
            and math.isclose(self.y0, other.y0, abs_tol=1e-12)
            and math.isclose(self.h, other.h, rel_tol=1e-12)
        )
