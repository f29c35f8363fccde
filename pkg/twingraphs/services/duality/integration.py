"""Potential reconstruction for exact 1-forms p dx + q dy on masked grids."""

import logging
from collections import deque
from typing import Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..space_model.types import Cell, DomainSpec
from ...exceptions.exceptions import DomainError

logger = logging.getLogger(__name__)


def _contiguous_from(mask: np.ndarray, start: int, axis: int) -> np.ndarray:
    """valid[..., k] is True when every cell between `start` and k along `axis` is unmasked."""
    m = np.moveaxis(mask, axis, -1)
    valid = np.zeros_like(m)
    valid[..., start:] = np.logical_and.accumulate(m[..., start:], axis=-1)
    valid[..., :start + 1] = np.logical_and.accumulate(m[..., start::-1], axis=-1)[..., ::-1]
    return np.moveaxis(valid, -1, axis)


def _line_integrals(values: np.ndarray, h: float, start: int, axis: int) -> np.ndarray:
    """∫ from index `start` to each index along `axis` of the sampled values."""
    filled = np.nan_to_num(values, nan=0.0)
    cumulative = cumulative_trapezoid(filled, dx=h, axis=axis, initial=0)
    anchor = np.take(cumulative, [start], axis=axis)
    return cumulative - anchor


def integrate_exact_form(p: np.ndarray, q: np.ndarray, domain: DomainSpec, anchor: Cell) -> np.ndarray:
    """Potential v with v_x ≈ p, v_y ≈ q and v(anchor) = 0.

    Cells reachable by both axis staircases from the anchor (row first, column
    first) get the average of the two trapezoidal path integrals; the others
    are reached by breadth-first extension from already integrated cells.
    """
    if not domain.contains_cell(anchor):
        raise DomainError(f"Anchor {anchor} is not an unmasked cell")
    mask, h = domain.mask, domain.h
    i0, j0 = anchor

    row_int = _line_integrals(p, h, j0, axis=1)
    row_ok = _contiguous_from(mask, j0, axis=1)
    col_int = _line_integrals(q, h, i0, axis=0)
    col_ok = _contiguous_from(mask, i0, axis=0)

    row_first = row_int[i0][None, :] + col_int
    row_first_ok = row_ok[i0][None, :] & col_ok
    col_first = col_int[:, j0][:, None] + row_int
    col_first_ok = col_ok[:, j0][:, None] & row_ok

    v = np.full(mask.shape, np.nan)
    both = mask & row_first_ok & col_first_ok
    v[both] = 0.5 * (row_first[both] + col_first[both])
    only_row = mask & row_first_ok & ~col_first_ok
    v[only_row] = row_first[only_row]
    only_col = mask & col_first_ok & ~row_first_ok
    v[only_col] = col_first[only_col]
    v[i0, j0] = 0.0

    pending = int((mask & np.isnan(v)).sum())
    if pending:
        logger.debug(f"Extending potential to {pending} cells off the staircases")
        _extend_breadth_first(v, p, q, mask, h)
    return v


def _extend_breadth_first(v: np.ndarray, p: np.ndarray, q: np.ndarray, mask: np.ndarray, h: float) -> None:
    rows, cols = np.nonzero(mask & np.isfinite(v))
    queue = deque(zip(rows.tolist(), cols.tolist()))
    ny, nx = mask.shape
    steps: Tuple[Tuple[int, int], ...] = ((0, 1), (0, -1), (1, 0), (-1, 0))
    while queue:
        i, j = queue.popleft()
        for di, dj in steps:
            a, b = i + di, j + dj
            if not (0 <= a < ny and 0 <= b < nx) or not mask[a, b] or np.isfinite(v[a, b]):
                continue
            if dj:
                v[a, b] = v[i, j] + dj * 0.5 * h * (p[i, j] + p[a, b])
            else:
                v[a, b] = v[i, j] + di * 0.5 * h * (q[i, j] + q[a, b])
            queue.append((a, b))
    if np.any(mask & np.isnan(v)):
        raise DomainError("Domain is not connected; potential is undefined on some cells")
