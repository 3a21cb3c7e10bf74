"""
Backward induction

The subgame perfect equilibrium is the baseline every forward-induction
result is compared with. Strict preferences make the choice at each node
unique, so ties are an invariant violation rather than a policy question.
"""

import logging
from typing import Dict, List

from models.elimination import SPEResult
from models.game import GameTree

logger = logging.getLogger(__name__)


def backward_values(tree: GameTree) -> Dict[int, int]:
    """Map every id to the outcome reached from it under backward induction."""
    reached: Dict[int, int] = {}
    for node_id in reversed(tree.preorder):
        if tree.is_outcome(node_id):
            reached[node_id] = node_id
            continue
        player = tree.owner(node_id)
        options = [reached[child] for child in tree.children(node_id)]
        best = max(options, key=lambda outcome: tree.payoff(outcome, player))
        assert sum(tree.payoff(o, player) == tree.payoff(best, player) for o in options) == 1
        reached[node_id] = best
    return reached


def solve_spe(tree: GameTree) -> SPEResult:
    """
    Solve *tree* by backward induction.

    Returns:
        SPEResult: The strategy at every decision node, reached or not, and
        the path and outcome it induces from the root
    """
    reached = backward_values(tree)
    strategy = {
        node_id: next(c for c in tree.children(node_id) if reached[c] == reached[node_id])
        for node_id in tree.nodes
    }

    path: List[int] = [tree.root]
    while tree.is_decision(path[-1]):
        path.append(strategy[path[-1]])

    outcome = path[-1]
    logger.debug(f"Backward induction reaches {tree.label(outcome)}")
    return SPEResult(
        strategy=strategy,
        path=tuple(path),
        outcome=outcome,
        payoffs=tree.outcomes[outcome].payoffs,
    )
