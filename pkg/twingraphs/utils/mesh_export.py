"""Wavefront OBJ export of a sampled graph embedded as (x, y, u)."""

import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from ..exceptions.exceptions import GridFormatError
from ..services.field_ops.types import ScalarField
from .grid_io import format_value

logger = logging.getLogger(__name__)


def triangulate(field: ScalarField) -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    """Vertices (one per unmasked cell) and counter-clockwise triangles, 0-based.

    Grid squares with four unmasked corners give two triangles, those with
    three give one.
    """
    domain = field.domain
    mask = domain.mask
    index = np.full(mask.shape, -1, dtype=int)
    index[mask] = np.arange(int(mask.sum()))
    X, Y = domain.grid()
    vertices = np.column_stack([X[mask], Y[mask], field.values[mask]])

    faces: List[Tuple[int, int, int]] = []
    for i in range(domain.ny - 1):
        for j in range(domain.nx - 1):
            ring = [index[i, j], index[i, j + 1], index[i + 1, j + 1], index[i + 1, j]]
            present = [k for k in ring if k >= 0]
            if len(present) == 4:
                faces.append((ring[0], ring[1], ring[2]))
                faces.append((ring[0], ring[2], ring[3]))
            elif len(present) == 3:
                faces.append(tuple(present))
    return vertices, faces


def _obj_text(vertices: np.ndarray, faces: List[Tuple[int, int, int]]) -> str:
    lines = [f"v {format_value(x)} {format_value(y)} {format_value(z)}" for x, y, z in vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in faces]
    return "\n".join(lines) + "\n"


def render_obj(field: ScalarField) -> str:
    return _obj_text(*triangulate(field))


def write_obj(path: Union[str, Path], field: ScalarField) -> int:
    """Write the mesh and return the number of triangles."""
    vertices, faces = triangulate(field)
    try:
        Path(path).write_text(_obj_text(vertices, faces))
    except OSError as e:
        raise GridFormatError(f"Cannot write mesh {path}: {str(e)}")
    count = len(faces)
    logger.info(f"Wrote mesh with {count} triangles to {path}")
    return count
