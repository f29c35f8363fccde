"""`curvature`, `feasibility` and `mesh` commands."""

import logging
from argparse import Namespace

import numpy as np

from ..context import Toolkit, emit_json, emit_text
from ...services.space_model.service import (
    existence_classifier,
    nonexistence_mechanisms,
    space_name,
    timelike_circle_range,
)
from ...services.space_model.types import CausalCharacter, SpaceParams
from ...utils.grid_io import format_value, read_grid
from ...utils.mesh_export import write_obj

logger = logging.getLogger(__name__)


def format_interval(interval) -> str:
    if interval is None:
        return "empty"
    low, high = interval
    return f"({format(low, 'g')},{format(high, 'g')})"


def curvature(args: Namespace, toolkit: Toolkit) -> int:
    grid = read_grid(args.grid)
    H = toolkit.field_ops.mean_curvature(grid.field, grid.params)
    rows = [",".join(format_value(v) for v in row) for row in H.values]
    values = H.masked_values()
    summary = {
        "min": float(values.min()) if values.size else None,
        "max": float(values.max()) if values.size else None,
        "mean": float(values.mean()) if values.size else None,
        "cells": int(values.size),
    }
    emit_text("\n".join(rows) + "\n", args.out)
    emit_json(summary)
    return 0


def feasibility(args: Namespace, toolkit: Toolkit) -> int:
    params = SpaceParams(args.kappa, args.tau, CausalCharacter.LORENTZIAN)
    mechanisms = nonexistence_mechanisms(params)
    emit_json({
        "space": space_name(params),
        "kappa": params.kappa,
        "tau": params.bundle,
        "discriminant": params.discriminant,
        "verdict": existence_classifier(params).value,
        "timelike_circle_radii": format_interval(timelike_circle_range(params)),
        "mechanisms": mechanisms.model_dump(mode="json"),
    })
    return 0


def mesh(args: Namespace, toolkit: Toolkit) -> int:
    grid = read_grid(args.grid)
    triangles = write_obj(args.out, grid.field)
    logger.info(f"Mesh of {grid.params.label} written with {triangles} triangles")
    return 0


def register(subparsers) -> None:
    """Register geometry commands."""
    parser = subparsers.add_parser("curvature", help="mean curvature field of a grid")
    parser.add_argument("grid")
    parser.add_argument("--out", help="write the H-field CSV here instead of standard output")
    parser.set_defaults(handler=curvature)

    parser = subparsers.add_parser("feasibility", help="classify L(kappa,tau) for complete spacelike surfaces")
    parser.add_argument("--kappa", type=float, required=True)
    parser.add_argument("--tau", type=float, required=True)
    parser.set_defaults(handler=feasibility)

    parser = subparsers.add_parser("mesh", help="export a grid as a Wavefront OBJ surface")
    parser.add_argument("grid")
    parser.add_argument("--out", required=True)
    parser.set_defaults(handler=mesh)
