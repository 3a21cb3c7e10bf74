"""
Analysis on top of the solvers

Pareto checks, SPE/PPE comparison, the exhaustive biped table, batch
statistics, and the fast path for Take-or-Leave shaped (invertible) games.
"""

import logging
from itertools import permutations
from typing import Iterable, List, Set, Tuple

import numpy as np

from game_core.errors import NotInvertibleError, UnknownNodeError
from game_core.parser import parse_game
from models.game import GameTree
from models.reports import BatchStatistics, BipedCase, BipedGame, BipedRow, ComparisonReport
from services.ppe_service import solve_ppe_general
from services.spe_service import solve_spe

logger = logging.getLogger(__name__)


# ============================================================================
# PARETO
# ============================================================================

def _payoff_matrix(tree: GameTree) -> Tuple[Tuple[int, ...], np.ndarray]:
    ids = tuple(sorted(tree.outcome_ids))
    return ids, np.array([tree.outcomes[o].payoffs for o in ids], dtype=object)


def is_pareto_optimal(tree: GameTree, outcome_id: int) -> bool:
    """
    True if no outcome gives every player strictly more than *outcome_id*.

    Raises:
        UnknownNodeError: If *outcome_id* is not an outcome of *tree*
    """
    if not tree.is_outcome(tree.require(outcome_id)):
        raise UnknownNodeError(
            f"n{outcome_id} is a decision node, not an outcome",
            "UNKNOWN_NODE",
            {"id": outcome_id},
        )
    _, matrix = _payoff_matrix(tree)
    point = np.array(tree.outcomes[outcome_id].payoffs, dtype=object)
    return not bool(np.any(np.all(matrix > point, axis=1)))


def pareto_frontier(tree: GameTree) -> Tuple[int, ...]:
    """All Pareto-optimal outcome ids, increasing."""
    ids, matrix = _payoff_matrix(tree)
    dominated = np.all(matrix[None, :, :] > matrix[:, None, :], axis=2).any(axis=1)
    return tuple(o for o, hit in zip(ids, dominated) if not hit)


# ============================================================================
# COMPARISON
# ============================================================================

def compare(tree: GameTree) -> ComparisonReport:
    """Run backward induction and the general construction side by side."""
    spe = solve_spe(tree)
    ppe = solve_ppe_general(tree)
    equal = spe.outcome == ppe.outcome
    improves = not equal and all(p > s for p, s in zip(ppe.payoffs, spe.payoffs))
    return ComparisonReport(
        spe_outcome=spe.outcome,
        spe_payoffs=spe.payoffs,
        ppe_outcome=ppe.outcome,
        ppe_payoffs=ppe.payoffs,
        equal=equal,
        ppe_pareto_improves_spe=improves,
        ppe_pareto_optimal=is_pareto_optimal(tree, ppe.outcome),
    )


def spe_ppe_statistics(trees: Iterable[GameTree]) -> BatchStatistics:
    """Count equal, differing and Pareto-improving equilibrium pairs."""
    games = equal = improving = 0
    for tree in trees:
        report = compare(tree)
        games += 1
        equal += report.equal
        improving += report.ppe_pareto_improves_spe
    return BatchStatistics(
        games=games, equal=equal, differing=games - equal, pareto_improving=improving
    )


# ============================================================================
# BIPED GAMES
# ============================================================================

def biped_case(game: BipedGame) -> BipedCase:
    """Classify by Peter's payoff at outcome 1 and, for the middle case,
    by whether Mary ranks outcomes 3 and 4 the way Peter does.
    """
    if game.a == 0:
        return "0"
    if game.a == 2:
        return "2"
    return "1=" if (game.b < game.c) == (game.e < game.f) else "1≠"


def enumerate_biped() -> List[BipedRow]:
    """
    All 18 biped games up to swapping outcomes 3 and 4.

    Payoffs of each player are a permutation of 0, 1, 2. The swap is fixed
    by requiring ``b < c``. Rows come in increasing ``(a, b, c, d, e, f)``.
    """
    rows = []
    for a, b, c in permutations(range(3)):
        if b > c:
            continue
        for d, e, f in permutations(range(3)):
            game = BipedGame(a=a, b=b, c=c, d=d, e=e, f=f)
            report = compare(parse_game(game.to_text()))
            rows.append(BipedRow(game=game, case=biped_case(game), report=report))
    logger.debug(f"Enumerated {len(rows)} biped games")
    return rows


# ============================================================================
# INVERTIBLE GAMES
# ============================================================================

def is_invertible(tree: GameTree) -> bool:
    """
    True for Take-or-Leave shaped games.

    Every decision node has one outcome child and one decision child, except
    the deepest, whose one or two children are outcomes. Consecutive nodes
    of this spine belong to different players. A lone outcome qualifies.
    """
    node = tree.root
    previous_owner = None
    while tree.is_decision(node):
        owner = tree.owner(node)
        if owner == previous_owner:
            return False
        children = tree.children(node)
        inner = [c for c in children if tree.is_decision(c)]
        if not inner:
            return len(children) <= 2
        if len(children) != 2 or len(inner) != 1:
            return False
        previous_owner = owner
        node = inner[0]
    return True


def solve_invertible(tree: GameTree) -> int:
    """
    Walk the spine comparing the present outcome with the future ones.

    Taking is right when the present outcome beats every future survivor.
    Otherwise the mover preempts the future outcomes worse than the present
    one, the present outcome is gone, and play leaves to the next node.

    Raises:
        NotInvertibleError: If *tree* is not Take-or-Leave shaped
    """
    if not is_invertible(tree):
        raise NotInvertibleError(
            "Game is not a Take-or-Leave spine", "NOT_INVERTIBLE", {"root": tree.root}
        )

    alive: Set[int] = set(tree.outcome_ids)
    node = tree.root
    while tree.is_decision(node):
        player = tree.owner(node)
        children = tree.children(node)
        inner = [c for c in children if tree.is_decision(c)]
        if not inner:
            return max(
                (c for c in children if c in alive), key=lambda o: tree.payoff(o, player)
            )

        present = next(c for c in children if tree.is_outcome(c))
        following = inner[0]
        if present in alive:
            value = tree.payoff(present, player)
            future = alive & tree.descendants(following)
            if all(tree.payoff(o, player) < value for o in future):
                return present
            alive -= {o for o in future if tree.payoff(o, player) < value}
            alive.discard(present)
        node = following
    return node
