"""Finite-difference stencils on masked grids.

Masked cells hold NaN; a stencil is used only where every value it touches is
finite, falling back from central to four-point one-sided, three-point
one-sided and two-point differences.
"""

from typing import Tuple

import numpy as np

from ..space_model.types import DomainSpec, SpaceParams


def shift(values: np.ndarray, offset: int, axis: int) -> np.ndarray:
    """result[i] = values[i + offset] along `axis`, NaN past the edge."""
    result = np.full(values.shape, np.nan)
    n = values.shape[axis]
    if abs(offset) >= n:
        return result
    src = [slice(None)] * values.ndim
    dst = [slice(None)] * values.ndim
    if offset >= 0:
        src[axis] = slice(offset, None)
        dst[axis] = slice(0, n - offset)
    else:
        src[axis] = slice(0, n + offset)
        dst[axis] = slice(-offset, None)
    result[tuple(dst)] = values[tuple(src)]
    return result


def derivative_with_consistency(values: np.ndarray, h: float, axis: int) -> Tuple[np.ndarray, np.ndarray]:
    """First derivative along `axis` (1 = x, 0 = y) and the cells where it is consistent.

    Consistent cells use the central difference or a four-point one-sided
    stencil through a cubically extrapolated ghost value; both carry the
    leading error h²u'''/6, so differences of neighbouring values stay O(h²)
    accurate. Shorter one-sided stencils are a fallback and are not consistent.
    """
    f = values
    p1, m1 = shift(f, 1, axis), shift(f, -1, axis)
    p2, m2 = shift(f, 2, axis), shift(f, -2, axis)
    p3, m3 = shift(f, 3, axis), shift(f, -3, axis)
    with np.errstate(invalid="ignore"):
        central = (p1 - m1) / (2 * h)
        forward_ghost = (-4 * f + 7 * p1 - 4 * p2 + p3) / (2 * h)
        backward_ghost = (4 * f - 7 * m1 + 4 * m2 - m3) / (2 * h)
        forward2 = (-3 * f + 4 * p1 - p2) / (2 * h)
        backward2 = (3 * f - 4 * m1 + m2) / (2 * h)
        forward1 = (p1 - f) / h
        backward1 = (f - m1) / h
    out = np.full(f.shape, np.nan)
    for candidate in (backward1, forward1, backward2, forward2, backward_ghost, forward_ghost, central):
        out = np.where(np.isfinite(candidate), candidate, out)
    finite = np.isfinite(f)
    consistent = finite & (np.isfinite(central) | np.isfinite(forward_ghost) | np.isfinite(backward_ghost))
    return np.where(finite, out, np.nan), consistent


def derivative(values: np.ndarray, h: float, axis: int) -> np.ndarray:
    """First derivative along `axis` (1 = x, 0 = y)."""
    return derivative_with_consistency(values, h, axis)[0]


def face_average(values: np.ndarray, consistent: np.ndarray, axis: int) -> np.ndarray:
    """Cell values averaged onto the faces normal to `axis`.

    A face whose neighbour on one side is not consistent takes the average of
    the other side's value and a quadratic ghost extrapolated from that side.
    Faces not between two finite cells are NaN.
    """
    d = values
    c = consistent.astype(float)
    at = {k: shift(d, k, axis) for k in (-2, -1, 1, 2, 3)}
    ok = {k: shift(c, k, axis) == 1.0 for k in (-2, -1, 1, 2, 3)}
    with np.errstate(invalid="ignore"):
        average = 0.5 * (d + at[1])
        from_low = 0.5 * (4 * d - 3 * at[-1] + at[-2])
        from_high = 0.5 * (4 * at[1] - 3 * at[2] + at[3])
    low_ok = consistent & ok[-1] & ok[-2]
    high_ok = ok[1] & ok[2] & ok[3]
    both = consistent & ok[1]
    face = np.where(~both & low_ok, from_low, average)
    face = np.where(~both & ~low_ok & high_ok, from_high, face)
    face = np.where(np.isfinite(average), face, np.nan)
    index = [slice(None)] * d.ndim
    index[axis] = slice(0, -1)
    return face[tuple(index)]


def gradient(values: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    return derivative(values, h, axis=1), derivative(values, h, axis=0)


def second_derivatives(values: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Central second differences (f_xx, f_yy, f_xy); NaN where the 3x3 stencil is incomplete."""
    f = values
    fxx = (shift(f, 1, 1) - 2 * f + shift(f, -1, 1)) / h ** 2
    fyy = (shift(f, 1, 0) - 2 * f + shift(f, -1, 0)) / h ** 2
    ne = shift(shift(f, 1, 1), 1, 0)
    nw = shift(shift(f, -1, 1), 1, 0)
    se = shift(shift(f, 1, 1), -1, 0)
    sw = shift(shift(f, -1, 1), -1, 0)
    fxy = (ne - nw - se + sw) / (4 * h ** 2)
    return fxx, fyy, fxy


def face_coordinates(domain: DomainSpec) -> Tuple[Tuple[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]:
    """Midpoints of x-faces, shape (ny, nx−1), and y-faces, shape (ny−1, nx)."""
    X, Y = domain.grid()
    x_faces = (0.5 * (X[:, 1:] + X[:, :-1]), Y[:, :-1])
    y_faces = (X[:-1, :], 0.5 * (Y[1:, :] + Y[:-1, :]))
    return x_faces, y_faces


def lambda_at(params: SpaceParams, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + 0.25 * params.kappa * (x ** 2 + y ** 2))


def face_frame_components(
    values: np.ndarray,
    domain: DomainSpec,
    params: SpaceParams
) -> Tuple[Tuple[np.ndarray, np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """(α, β, λ) on x-faces and on y-faces.

    The normal derivative is the two-cell difference across the face, the
    tangential one the face average of the cell derivatives (see `face_average`).
    Faces not between two unmasked cells are NaN.
    """
    h = domain.h
    ux, consistent_x = derivative_with_consistency(values, h, axis=1)
    uy, consistent_y = derivative_with_consistency(values, h, axis=0)
    eps, tau = params.epsilon, params.bundle
    (xf_x, xf_y), (yf_x, yf_y) = face_coordinates(domain)

    lam_x = lambda_at(params, xf_x, xf_y)
    normal_x = (values[:, 1:] - values[:, :-1]) / h
    tangential_x = face_average(uy, consistent_y, axis=1)
    alpha_x = normal_x / lam_x + eps * tau * xf_y
    beta_x = tangential_x / lam_x - eps * tau * xf_x

    lam_y = lambda_at(params, yf_x, yf_y)
    normal_y = (values[1:, :] - values[:-1, :]) / h
    tangential_y = face_average(ux, consistent_x, axis=0)
    alpha_y = tangential_y / lam_y + eps * tau * yf_y
    beta_y = normal_y / lam_y - eps * tau * yf_x

    return (alpha_x, beta_x, lam_x), (alpha_y, beta_y, lam_y)


def cell_divergence(flux_x: np.ndarray, flux_y: np.ndarray, domain: DomainSpec, params: SpaceParams) -> np.ndarray:
    """λ⁻²[(λa)_x + (λb)_y] from face fluxes λa (x-faces) and λb (y-faces); NaN off the interior."""
    h = domain.h
    div = np.full(domain.mask.shape, np.nan)
    inner = (slice(1, -1), slice(1, -1))
    net = (
        flux_x[1:-1, 1:] - flux_x[1:-1, :-1]
        + flux_y[1:, 1:-1] - flux_y[:-1, 1:-1]
    )
    X, Y = domain.grid()
    lam = lambda_at(params, X, Y)
    div[inner] = net / (h * lam[inner] ** 2)
    return np.where(domain.interior_mask(), div, np.nan)
