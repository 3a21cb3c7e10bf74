import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from config.settings import Settings
from game_core.errors import EXIT_INPUT_ERROR, EXIT_OK, GameValidationError
from game_core.generator import random_game, random_invertible_game
from game_core.parser import parse_games, serialize_game
from middleware.error_handler import guarded
from models.game import GameTree
from services.analysis_service import compare, enumerate_biped, spe_ppe_statistics
from services.logic_service import LogicService
from services.ppe_service import solve_ppe_general
from services.solver_service import SolverService
from utils.formatting import (
    export_dot,
    format_biped_table,
    format_comparison,
    format_solve_report,
    format_statistics,
    format_verification,
)

logger = logging.getLogger(__name__)


def _pick(value: Optional[int], default: int) -> int:
    return default if value is None else value


class CommandController:
    """Handles the command-line sub-commands: solve, compare, verify, export-dot, random, biped."""

    def __init__(
        self,
        settings: Settings,
        solver_service: Optional[SolverService] = None,
        out: Optional[TextIO] = None,
    ):
        self.settings = settings
        self.solver_service = solver_service or SolverService(
            LogicService(settings.MAX_LOGIC_VARS, settings.MAX_POWERSET_VERTICES)
        )
        self.out = out

    @property
    def stream(self) -> TextIO:
        return self.out or sys.stdout

    def _read_games(self, source: str) -> List[GameTree]:
        if source == "-":
            logger.info("Reading games from standard input")
            text = sys.stdin.read()
        else:
            logger.info(f"Reading games from {source}")
            text = Path(source).read_text(encoding="utf-8")
        return parse_games(text)

    def _emit(self, chunks: List[str]) -> None:
        self.stream.write("\n".join(chunks))

    @guarded
    def solve(self, args: argparse.Namespace) -> int:
        """Handle `solve`: one report per game, separated by blank lines."""
        games = self._read_games(args.file)
        reports = []
        for tree in games:
            report = self.solver_service.solve(tree, args.method)
            logger.info(f"{args.method}: outcome {tree.label(report.outcome)}")
            reports.append(format_solve_report(tree, report, with_trace=args.trace))
        self._emit(reports)
        return EXIT_OK

    @guarded
    def compare(self, args: argparse.Namespace) -> int:
        """Handle `compare`: backward induction next to the perfect prediction outcome."""
        games = self._read_games(args.file)
        self._emit([format_comparison(tree, compare(tree)) for tree in games])
        if args.summary:
            self.stream.write("\n" + format_statistics(spe_ppe_statistics(games)))
        return EXIT_OK

    @guarded
    def verify(self, args: argparse.Namespace) -> int:
        """Handle `verify`: exit 0 only if the equation system agrees with both algorithms."""
        games = self._read_games(args.file)
        logic = self.solver_service.logic_service
        reports = [logic.verify(tree) for tree in games]
        self._emit([format_verification(tree, r) for tree, r in zip(games, reports)])
        if all(r.agrees and r.discards_linked for r in reports):
            return EXIT_OK
        logger.error("Equation system disagrees with the elimination algorithms")
        return EXIT_INPUT_ERROR

    @guarded
    def export_dot(self, args: argparse.Namespace) -> int:
        """Handle `export-dot`: the first game as an annotated digraph."""
        games = self._read_games(args.file)
        if len(games) > 1:
            logger.warning(f"export-dot renders only the first game; ignoring {len(games) - 1} more")
        tree = games[0]
        result = solve_ppe_general(tree)
        self.stream.write(export_dot(tree, result.path, result.trace))
        return EXIT_OK

    @guarded
    def random(self, args: argparse.Namespace) -> int:
        """Handle `random`: *count* games from consecutive seeds."""
        players = _pick(args.players, self.settings.RANDOM_PLAYERS)
        depth = _pick(args.depth, self.settings.RANDOM_DEPTH)
        branching = _pick(args.branching, self.settings.RANDOM_BRANCHING)
        count = _pick(args.count, self.settings.RANDOM_COUNT)
        if count < 1:
            raise GameValidationError(
                f"count must be at least 1, got {count}", "INVALID_PARAMETERS", {"count": count}
            )

        if args.invertible and args.branching is not None:
            logger.warning("--branching does not apply to --invertible games; ignoring it")
        games = []
        for seed in range(args.seed, args.seed + count):
            if args.invertible:
                tree = random_invertible_game(seed, depth, players)
            else:
                tree = random_game(seed, players, depth, branching)
            games.append(serialize_game(tree) + "\n")
        logger.info(f"Generated {count} game(s) from seed {args.seed}")
        self._emit(games)
        return EXIT_OK

    @guarded
    def biped(self, args: argparse.Namespace) -> int:
        """Handle `biped`: the complete table of two-level three-outcome games."""
        self.stream.write(format_biped_table(enumerate_biped()))
        return EXIT_OK
