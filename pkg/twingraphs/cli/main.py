"""Command-line entry point."""

import argparse
import json
import logging
import sys
from typing import List, Optional

from .commands import duality, estimates, generation, geometry
from .context import Toolkit
from ..config.config import ToolkitConfig
from ..exceptions.exceptions import TwinGraphsError

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_INTERNAL = 3


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = ToolkitArgumentParser(prog="twingraphs", description="Vertical graphs in E(kappa,tau) and L(kappa,tau)")
    parser.add_argument("--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument("--debug", action="store_true", help="log at DEBUG level")
    parser.add_argument("--env-file", help="dotenv file with TWINGRAPHS_* settings")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    # Register command groups
    for group in (geometry, duality, generation, estimates):
        group.register(subparsers)
    return parser


def _diagnostic(error: str, exit_code: int, message: str) -> None:
    sys.stderr.write(json.dumps({"error": error, "exit_code": exit_code, "message": message}) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Configure logging
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )

    try:
        config = ToolkitConfig().initialize(args.env_file)
        toolkit = Toolkit.from_config(config)
        logger.info(f"Running command {args.command}")
        return args.handler(args, toolkit)
    except TwinGraphsError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        _diagnostic(type(e).__name__, e.exit_code, str(e))
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected failure in {args.command}: {str(e)}", exc_info=True)
        _diagnostic(type(e).__name__, EXIT_INTERNAL, str(e))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
