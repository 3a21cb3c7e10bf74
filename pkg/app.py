"""
Perfect Prediction Equilibrium solver - command-line entry point.
Wires settings, services and the command controller together.

Run with: python app.py <command> [options]
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from config.settings import Settings
from controllers.command_controller import CommandController
from game_core.errors import UsageError
from middleware.error_handler import handle_error
from services.solver_service import SolverService
from services.logic_service import LogicService

METHODS = ["spe", "ppe-general", "ppe-quick", "ppe-logic"]


def setup_logging(level: str) -> None:
    """Configure logging; records go to stderr so stdout carries only reports."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


class CommandParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as input errors instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}", "USAGE")


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(
        prog="ppe",
        description="Perfect prediction and subgame perfect equilibria of perfect-information games",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default from LOG_LEVEL)")
    parser.add_argument("--max-logic-vars", type=int, default=None, help="Enumeration bound of the logic solver")
    parser.add_argument(
        "--max-powerset-vertices", type=int, default=None, help="Component bound of the logic solver"
    )

    # Same bounds after the sub-command; unset values keep the global ones
    bounds = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    bounds.add_argument("--max-logic-vars", type=int, help="Enumeration bound of the logic solver")
    bounds.add_argument("--max-powerset-vertices", type=int, help="Component bound of the logic solver")

    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", parents=[bounds], help="Solve every game of a file")
    solve.add_argument("file", help="Game file, or - for standard input")
    solve.add_argument("--method", choices=METHODS, default="ppe-general")
    solve.add_argument("--trace", action="store_true", help="Include the elimination trace")

    compare = commands.add_parser("compare", help="Compare the SPE and PPE outcomes")
    compare.add_argument("file", help="Game file, or - for standard input")
    compare.add_argument("--summary", action="store_true", help="Append batch statistics")

    verify = commands.add_parser(
        "verify", parents=[bounds], help="Check the equation system against both algorithms"
    )
    verify.add_argument("file", help="Game file, or - for standard input")

    dot = commands.add_parser("export-dot", help="Render the first game as an annotated DOT digraph")
    dot.add_argument("file", help="Game file, or - for standard input")

    random = commands.add_parser("random", help="Generate random games")
    random.add_argument("--seed", type=int, default=0)
    random.add_argument("--players", type=int, default=None)
    random.add_argument("--depth", type=int, default=None)
    random.add_argument("--branching", type=int, default=None)
    random.add_argument("--count", type=int, default=None)
    random.add_argument("--invertible", action="store_true", help="Take-or-Leave shaped spines")

    commands.add_parser("biped", help="Print the table of two-level three-outcome games")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse *argv*, run the command and return its exit code."""
    load_dotenv(os.path.join(os.path.dirname(__file__), ".env"))

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        setup_logging(Settings().LOG_LEVEL)
        return handle_error(e)
    settings = Settings()
    setup_logging(args.log_level or settings.LOG_LEVEL)
    logger = logging.getLogger(__name__)
    logger.info(f"Running command '{args.command}'")

    logic_service = LogicService(
        max_vars=settings.MAX_LOGIC_VARS if args.max_logic_vars is None else args.max_logic_vars,
        max_vertices=(
            settings.MAX_POWERSET_VERTICES
            if args.max_powerset_vertices is None
            else args.max_powerset_vertices
        ),
    )
    controller = CommandController(settings, SolverService(logic_service))

    # Build command dispatch map
    command_map = {
        "solve": controller.solve,
        "compare": controller.compare,
        "verify": controller.verify,
        "export-dot": controller.export_dot,
        "random": controller.random,
        "biped": controller.biped,
    }
    return command_map[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
