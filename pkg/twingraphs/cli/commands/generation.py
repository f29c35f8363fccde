"""`solve`, `example` and `hessian` commands."""

import logging
from argparse import Namespace

from ..context import Toolkit, emit_json, emit_text
from ...config.config import LINEAR_SOLVERS
from ...exceptions.exceptions import PreconditionError
from ...services.catalog.service import generate, names
from ...services.hessian.service import EUCLIDEAN
from ...services.solver.types import DirichletProblem
from ...services.space_model.types import CausalCharacter, SpaceParams
from ...utils.grid_io import read_grid, render_grid
from ...utils.shapes import parse_anchor, parse_boundary, parse_shape

logger = logging.getLogger(__name__)


def solve(args: Namespace, toolkit: Toolkit) -> int:
    toolkit.config.set_solver_config(
        tolerance=args.tol,
        max_iterations=args.max_iter,
        damping=args.damping,
        linear_solver=args.linear_solver,
        newton_polish=True if args.newton else None
    )
    params = SpaceParams(args.kappa, args.tau, CausalCharacter(args.causal))
    domain = parse_shape(args.shape, args.h)
    problem = DirichletProblem.from_function(
        params, args.H, domain, parse_boundary(args.bc), toolkit.config.solver
    )
    result = toolkit.solver.solve(problem)
    emit_text(render_grid(result.field, params, H_expected=args.H), args.out)
    if args.report:
        emit_json(result.report, args.report)
    return 0


def example(args: Namespace, toolkit: Toolkit) -> int:
    domain = parse_shape(args.shape, args.h)
    params = None
    if args.kappa is not None or args.tau is not None or args.causal is not None:
        params = SpaceParams(args.kappa or 0.0, args.tau or 0.0, CausalCharacter(args.causal or "riemannian"))
    sample = generate(args.name, domain, args.H, params)
    emit_text(render_grid(sample.field, sample.params, H_expected=sample.mean_curvature), args.out)
    return 0


def hessian(args: Namespace, toolkit: Toolkit) -> int:
    grid = read_grid(args.grid)
    if grid.params != EUCLIDEAN:
        raise PreconditionError(f"Hessian-one construction needs a graph in R3, got {grid.params.label}")
    anchor = parse_anchor(args.anchor) if args.anchor else None
    solution = toolkit.hessian.hessian_from_minimal(grid.field, anchor=anchor)
    emit_text(render_grid(solution.f, grid.params), args.out)
    residuals = solution.det_residual.masked_values()
    emit_json({
        "max_det_residual": solution.max_det_residual,
        "mean_det_residual": float(abs(residuals).mean()) if residuals.size else 0.0,
        "mixed_residual": solution.mixed_residual,
        "convex": solution.convex,
    }, args.report)
    return 0


def register(subparsers) -> None:
    """Register generation commands."""
    parser = subparsers.add_parser("solve", help="solve the CMC Dirichlet problem")
    parser.add_argument("--kappa", type=float, default=0.0)
    parser.add_argument("--tau", type=float, default=0.0)
    parser.add_argument("--causal", choices=[c.value for c in CausalCharacter], default="riemannian")
    parser.add_argument("--H", type=float, required=True)
    parser.add_argument("--shape", required=True, help="disk:R or rect:a,b")
    parser.add_argument("--bc", default="const:0", help="const:c")
    parser.add_argument("--h", type=float, required=True)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--damping", type=float, default=None)
    parser.add_argument("--linear-solver", choices=list(LINEAR_SOLVERS), default=None)
    parser.add_argument("--newton", action="store_true", help="finish with a Newton-Krylov polish")
    parser.add_argument("--out")
    parser.add_argument("--report", help="convergence report JSON")
    parser.set_defaults(handler=solve)

    parser = subparsers.add_parser("example", help="sample a closed-form example")
    parser.add_argument("name", choices=names())
    parser.add_argument("--H", type=float, default=1.0)
    parser.add_argument("--shape", required=True, help="disk:R or rect:a,b")
    parser.add_argument("--h", type=float, required=True)
    parser.add_argument("--kappa", type=float)
    parser.add_argument("--tau", type=float)
    parser.add_argument("--causal", choices=[c.value for c in CausalCharacter])
    parser.add_argument("--out")
    parser.set_defaults(handler=example)

    parser = subparsers.add_parser("hessian", help="Hessian-one solution from a minimal graph in R3")
    parser.add_argument("grid")
    parser.add_argument("--anchor", help="gauge cell as column,row indices")
    parser.add_argument("--out")
    parser.add_argument("--report", help="residual summary JSON (standard output if omitted)")
    parser.set_defaults(handler=hessian)
