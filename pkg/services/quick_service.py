"""
Quick algorithm for the perfect prediction equilibrium

Walks down from the root once. At each node the owner heads for the
subtree holding their best surviving outcome; every other subtree is cut,
and inside the chosen subtree every outcome the owner likes less than the
best outcome of the cut subtrees is cut too. Survivor flags live in a
private working set, the tree itself is never touched.
"""

import logging
from typing import List, Set

from models.elimination import QuickResult, QuickVisit
from models.game import GameTree
from services.ppe_service import live_children

logger = logging.getLogger(__name__)


def solve_ppe_quick(tree: GameTree) -> QuickResult:
    """
    Compute the equilibrium path without building Newcombian classes.

    Returns:
        QuickResult: Path, outcome and one visit record per decision node
        on the path
    """
    alive: Set[int] = set(tree.outcome_ids)
    node = tree.root
    path: List[int] = [node]
    visits: List[QuickVisit] = []

    while tree.is_decision(node):
        player = tree.owner(node)
        reachable = alive & tree.descendants(node)
        favourite = max(reachable, key=lambda o: tree.payoff(o, player))
        move = next(c for c in tree.children(node) if favourite in tree.descendants(c))

        others = [c for c in live_children(tree, node, frozenset(alive)) if c != move]
        removed: Set[int] = set()
        threshold = None
        if others:
            cut = set().union(*(alive & tree.descendants(c) for c in others))
            threshold = max(tree.payoff(o, player) for o in cut)
            worse = {
                o for o in alive & tree.descendants(move)
                if tree.payoff(o, player) < threshold
            }
            removed = cut | worse
            alive -= removed

        visit = QuickVisit(
            node=node,
            player=player,
            move=move,
            threshold=threshold,
            removed=frozenset(removed),
            survivors=frozenset(alive & tree.descendants(move)),
        )
        logger.debug(
            f"Quick visit {tree.label(node)} -> {tree.label(move)}: "
            f"threshold {threshold}, {len(removed)} removed"
        )
        visits.append(visit)
        node = move
        path.append(node)

    return QuickResult(
        path=tuple(path),
        outcome=node,
        payoffs=tree.outcomes[node].payoffs,
        visits=tuple(visits),
    )
