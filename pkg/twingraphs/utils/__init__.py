"""File formats and argument parsing helpers."""

from .grid_io import GridFile, GridHeader, parse_grid, read_grid, render_grid, write_grid
from .mesh_export import render_obj, triangulate, write_obj
from .shapes import disk_coverage, parse_anchor, parse_boundary, parse_radii, parse_shape

__all__ = [
    'GridFile',
    'GridHeader',
    'disk_coverage',
    'parse_anchor',
    'parse_boundary',
    'parse_grid',
    'parse_radii',
    'parse_shape',
    'read_grid',
    'render_grid',
    'render_obj',
    'triangulate',
    'write_grid',
    'write_obj',
]
