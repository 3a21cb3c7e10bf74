"""
Solver Service - maps solve method names to the equilibrium algorithms.

Each method returns a SolveReport so that commands render every method the
same way. Only the general construction carries an elimination trace.
"""

import logging
from typing import Callable, Dict, List

from game_core.errors import UnknownMethodError
from models.game import GameTree
from models.reports import SolveReport
from services.logic_service import LogicService
from services.ppe_service import solve_ppe_general
from services.quick_service import solve_ppe_quick
from services.spe_service import solve_spe

logger = logging.getLogger(__name__)


class SolverService:
    """Dispatches ``solve --method`` names to the solvers."""

    def __init__(self, logic_service: LogicService):
        self.logic_service = logic_service

        # Build method dispatch map
        self._method_map: Dict[str, Callable[[GameTree], SolveReport]] = {
            "spe": self._solve_spe,
            "ppe-general": self._solve_general,
            "ppe-quick": self._solve_quick,
            "ppe-logic": self._solve_logic,
        }

    @property
    def methods(self) -> List[str]:
        return list(self._method_map)

    def solve(self, tree: GameTree, method: str) -> SolveReport:
        """
        Solve *tree* with the named method.

        Raises:
            UnknownMethodError: If *method* is not registered
            ResourceBoundError: If ``ppe-logic`` exceeds its bounds
        """
        handler = self._method_map.get(method)
        if handler is None:
            raise UnknownMethodError(
                f"Unknown method '{method}', expected one of {', '.join(self.methods)}",
                "UNKNOWN_METHOD",
                {"method": method},
            )
        logger.info(f"Solving {tree.size}-node game with {method}")
        return handler(tree)

    # ------------------------------------------------------------------
    # Methods
    # ------------------------------------------------------------------

    def _solve_spe(self, tree: GameTree) -> SolveReport:
        result = solve_spe(tree)
        return SolveReport(method="spe", path=result.path, outcome=result.outcome, payoffs=result.payoffs)

    def _solve_general(self, tree: GameTree) -> SolveReport:
        result = solve_ppe_general(tree)
        return SolveReport(
            method="ppe-general",
            path=result.path,
            outcome=result.outcome,
            payoffs=result.payoffs,
            trace=result.trace,
        )

    def _solve_quick(self, tree: GameTree) -> SolveReport:
        result = solve_ppe_quick(tree)
        return SolveReport(method="ppe-quick", path=result.path, outcome=result.outcome, payoffs=result.payoffs)

    def _solve_logic(self, tree: GameTree) -> SolveReport:
        result = self.logic_service.solve(tree)
        return SolveReport(method="ppe-logic", path=result.path, outcome=result.outcome, payoffs=result.payoffs)
