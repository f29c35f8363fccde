"""`dualize` and `verify` commands."""

import logging
from argparse import Namespace

from ..context import Toolkit, emit_json, emit_text
from ...utils.grid_io import read_grid, render_grid
from ...utils.shapes import parse_anchor

logger = logging.getLogger(__name__)


def dualize(args: Namespace, toolkit: Toolkit) -> int:
    if args.cmc_tol is not None:
        toolkit.config.set_duality_config(cmc_tolerance=args.cmc_tol)
    grid = read_grid(args.grid)
    anchor = parse_anchor(args.anchor) if args.anchor else None
    pair = toolkit.duality.dualize(grid.field, grid.params, anchor=anchor, mean_curvature=args.H)
    emit_text(render_grid(pair.target, pair.target_params, H_expected=grid.params.bundle), args.out)
    report = {
        "source_space": pair.source_params.label,
        "target_space": pair.target_params.label,
        "anchor": {"cx": pair.anchor[1], "cy": pair.anchor[0]},
        **pair.residuals.model_dump(),
    }
    if args.report or args.out:
        emit_json(report, args.report)
    return 0


def verify(args: Namespace, toolkit: Toolkit) -> int:
    source = read_grid(args.source)
    target = read_grid(args.target)
    pair = toolkit.duality.pair_from_fields(source.field, source.params, target.field, target.params)
    emit_json({
        "source_space": pair.source_params.label,
        "target_space": pair.target_params.label,
        "omega_product_residual": pair.residuals.omega_product_residual,
        "angle_product_residual": pair.residuals.angle_product_residual,
        "twin_residual": pair.residuals.twin_residual,
        "conformality_residual": pair.residuals.conformality_residual,
        "curvature_transfer_residual": pair.residuals.curvature_transfer_residual,
        "roundtrip_residual": toolkit.duality.roundtrip_error(pair),
    })
    return 0


def register(subparsers) -> None:
    """Register duality commands."""
    parser = subparsers.add_parser("dualize", help="integrate the dual graph of a CMC graph")
    parser.add_argument("grid")
    parser.add_argument("--anchor", help="gauge cell as column,row indices")
    parser.add_argument("--out", help="dual grid file (standard output if omitted)")
    parser.add_argument("--report", help="residual report JSON (standard output if omitted)")
    parser.add_argument("--H", type=float, help="source mean curvature, measured if omitted")
    parser.add_argument("--cmc-tol", type=float, help="relative tolerance of the constancy check")
    parser.set_defaults(handler=dualize)

    parser = subparsers.add_parser("verify", help="residuals of a pair of dual grids")
    parser.add_argument("source")
    parser.add_argument("target")
    parser.set_defaults(handler=verify)
