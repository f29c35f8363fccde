"""`estimate` command family."""

import logging
from argparse import Namespace

from ..context import Toolkit, emit_json
from ...exceptions.exceptions import PreconditionError
from ...services.analysis.reports import EstimateReport
from ...services.field_ops.types import ScalarField
from ...utils.grid_io import read_grid
from ...utils.shapes import parse_radii

logger = logging.getLogger(__name__)

TEST_FUNCTIONS = {
    "one": lambda x, y: 1.0 + 0.0 * x,
    "x2": lambda x, y: x ** 2,
    "y2": lambda x, y: y ** 2,
    "r2": lambda x, y: x ** 2 + y ** 2,
}


def _radii(args: Namespace):
    return parse_radii(args.radii) if args.radii else None


def estimate(args: Namespace, toolkit: Toolkit) -> int:
    grid = read_grid(args.grid)
    analysis = toolkit.analysis
    radii = _radii(args)
    if args.bound in ("heinz", "divergence", "nilgrowth", "angle") and radii is None:
        raise PreconditionError(f"estimate {args.bound} needs --radii")

    if args.bound == "heinz":
        report = analysis.heinz_flux_check(grid.field, grid.params, radii, mean_curvature=args.H)
    elif args.bound == "divergence":
        report = analysis.direct_divergence_check(grid.field, grid.params, radii)
    elif args.bound == "chengyau":
        report = analysis.cheng_yau_check(grid.field, grid.params, radii)
    elif args.bound == "nilgrowth":
        report = analysis.nil_growth_check(grid.field, grid.params, radii)
    elif args.bound == "angle":
        report = analysis.angle_integrability_check(grid.field, grid.params, radii)
    else:
        f = ScalarField.from_function(grid.field.domain, TEST_FUNCTIONS[args.f])
        result = analysis.coarea_identity(grid.field, grid.params, f, region_radius=args.radius)
        report = EstimateReport(
            name="coarea",
            witnesses=result.model_dump(),
            max_violation=result.residual - grid.field.domain.h ** 2 * args.factor,
            passed=result.residual <= grid.field.domain.h ** 2 * args.factor,
        )
    emit_json(report, args.report)
    return 0


def register(subparsers) -> None:
    """Register estimate commands."""
    parser = subparsers.add_parser("estimate", help="verify an integral identity or growth bound")
    parser.add_argument("bound", choices=["heinz", "divergence", "chengyau", "nilgrowth", "coarea", "angle"])
    parser.add_argument("grid")
    parser.add_argument("--radii", help="comma-separated disk or window radii")
    parser.add_argument("--H", type=float, help="mean curvature for the heinz check, measured if omitted")
    parser.add_argument("--f", choices=sorted(TEST_FUNCTIONS), default="one", help="coarea test function")
    parser.add_argument("--radius", type=float, help="coarea integration disk (whole mask if omitted)")
    parser.add_argument("--factor", type=float, default=10.0, help="coarea tolerance in units of h^2")
    parser.add_argument("--report", help="write the report here instead of standard output")
    parser.set_defaults(handler=estimate)
