"""Grid-sampled fields over a DomainSpec."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..space_model.types import Cell, CausalCharacter, DomainSpec
from ...exceptions.exceptions import DomainError, GridFormatError


def _masked(values: np.ndarray, domain: DomainSpec, name: str) -> np.ndarray:
    array = np.array(values, dtype=float)
    if array.shape != domain.mask.shape:
        raise GridFormatError(f"{name} has shape {array.shape}, expected {domain.mask.shape}")
    if not np.all(np.isfinite(array[domain.mask])):
        raise DomainError(f"{name} is not finite on every unmasked cell")
    array[~domain.mask] = np.nan
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Values of a graph function on the unmasked cells; NaN elsewhere."""
    domain: DomainSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _masked(self.values, self.domain, "ScalarField values"))

    @classmethod
    def from_function(cls, domain: DomainSpec, fn: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> "ScalarField":
        X, Y = domain.grid()
        values = np.full(domain.mask.shape, np.nan)
        values[domain.mask] = np.broadcast_to(fn(X[domain.mask], Y[domain.mask]), (int(domain.mask.sum()),))
        return cls(domain, values)

    @classmethod
    def constant(cls, domain: DomainSpec, value: float = 0.0) -> "ScalarField":
        return cls(domain, np.full(domain.mask.shape, float(value)))

    def shifted(self, constant: float) -> "ScalarField":
        return ScalarField(self.domain, self.values + constant)

    def restricted(self, mask: np.ndarray) -> "ScalarField":
        return ScalarField(self.domain.with_mask(self.domain.mask & mask), self.values)

    def at(self, cell: Cell) -> float:
        if not self.domain.contains_cell(cell):
            raise DomainError(f"Cell {cell} is not an unmasked cell of the domain")
        return float(self.values[cell])

    def masked_values(self, mask: Optional[np.ndarray] = None) -> np.ndarray:
        selector = self.domain.mask if mask is None else self.domain.mask & mask
        return self.values[selector]

    def sup_norm(self, mask: Optional[np.ndarray] = None) -> float:
        values = self.masked_values(mask)
        return float(np.max(np.abs(values))) if values.size else 0.0

    def value_range(self, mask: Optional[np.ndarray] = None) -> tuple:
        values = self.masked_values(mask)
        return float(values.min()), float(values.max())


@dataclass(frozen=True, eq=False)
class FrameField:
    """Generalized gradient in the frame {∂x/λ, ∂y/λ} together with ω (or ω̃)."""
    domain: DomainSpec
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)
    causal: CausalCharacter = CausalCharacter.RIEMANNIAN

    def __post_init__(self):
        for name in ("alpha", "beta", "omega"):
            object.__setattr__(self, name, _masked(getattr(self, name), self.domain, f"FrameField {name}"))
        omega = self.omega[self.domain.mask]
        if self.causal is CausalCharacter.RIEMANNIAN:
            if np.any(omega < 1.0 - 1e-12):
                raise DomainError("Riemannian frame field has omega < 1")
        elif np.any(omega <= 0) or np.any(omega > 1.0 + 1e-12):
            raise DomainError("Lorentzian frame field has omega outside (0, 1]")

    @property
    def epsilon(self) -> int:
        return 1 if self.causal is CausalCharacter.RIEMANNIAN else -1

    @property
    def norm(self) -> np.ndarray:
        return np.hypot(self.alpha, self.beta)


@dataclass(frozen=True, eq=False)
class FundamentalForm:
    """Symmetric 2x2 matrix per cell; `scale` is the factor applied to the frame-level form."""
    domain: DomainSpec
    e11: np.ndarray = field(repr=False)
    e12: np.ndarray = field(repr=False)
    e22: np.ndarray = field(repr=False)
    scale: np.ndarray = field(repr=False)

    def determinant(self) -> np.ndarray:
        return self.e11 * self.e22 - self.e12 ** 2

    def frame_level(self) -> "FundamentalForm":
        """The form before λ²-scaling, i.e. in the frame of normalised tangent vectors."""
        return FundamentalForm(
            self.domain, self.e11 / self.scale, self.e12 / self.scale, self.e22 / self.scale,
            np.where(self.domain.mask, 1.0, np.nan)
        )

    def is_positive_definite(self) -> bool:
        mask = self.domain.mask
        return bool(np.all(self.e11[mask] > 0) and np.all(self.determinant()[mask] > 0))

    def max_entry_difference(self, other: "FundamentalForm", factor: Optional[np.ndarray] = None) -> float:
        """max over cells and entries of |self − factor·other|."""
        weight = 1.0 if factor is None else factor
        mask = self.domain.mask & other.domain.mask
        diffs = [
            np.abs(mine - weight * theirs)[mask]
            for mine, theirs in ((self.e11, other.e11), (self.e12, other.e12), (self.e22, other.e22))
        ]
        return float(max(d.max() for d in diffs)) if mask.any() else 0.0
