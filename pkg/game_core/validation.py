"""
Validation helpers for game trees

Checks the structural assumptions every solver relies on before a GameTree
is handed out, so that malformed input fails early with a precise error.
"""

from collections import Counter
from typing import TYPE_CHECKING, Dict, Iterable, List, Sequence
import logging

from game_core.errors import (
    DuplicateIdError,
    EmptyNodeError,
    GameValidationError,
    PayoffArityError,
    StrictPreferenceError,
    UnknownNodeError,
    UnknownPlayerError,
)

if TYPE_CHECKING:
    from models.game import GameTree

logger = logging.getLogger(__name__)


# ============================================================================
# MODEL LIMITS
# ============================================================================

MIN_PLAYERS = 2


# ============================================================================
# VALIDATION FUNCTIONS
# ============================================================================

def validate_unique_ids(ids: Iterable[int]) -> None:
    """
    Validate that no id is used twice across nodes and outcomes.

    Args:
        ids: Every node and outcome id in source order

    Raises:
        DuplicateIdError: If an id occurs more than once
    """
    repeated = sorted(i for i, count in Counter(ids).items() if count > 1)
    if repeated:
        raise DuplicateIdError(
            f"Id {repeated[0]} is used more than once",
            "DUPLICATE_ID",
            {"ids": repeated},
        )


def validate_payoff_arity(payoffs: Dict[int, Sequence[int]], players: int) -> None:
    """
    Validate that every outcome carries one payoff per player.

    Args:
        payoffs: Payoff vector per outcome id
        players: Declared player count

    Raises:
        GameValidationError: If fewer than two players are declared
        PayoffArityError: If an outcome has a different arity
    """
    if players < MIN_PLAYERS:
        raise GameValidationError(
            f"A game needs at least {MIN_PLAYERS} players, got {players}",
            "TOO_FEW_PLAYERS",
            {"players": players},
        )
    for outcome_id, vector in payoffs.items():
        if len(vector) != players:
            raise PayoffArityError(
                f"Outcome o{outcome_id} has {len(vector)} payoffs, expected {players}",
                "PAYOFF_ARITY",
                {"outcome": outcome_id, "arity": len(vector), "players": players},
            )


def validate_strict_preferences(payoffs: Dict[int, Sequence[int]], players: int) -> None:
    """
    Validate that each player ranks all outcomes strictly.

    Args:
        payoffs: Payoff vector per outcome id
        players: Declared player count

    Raises:
        StrictPreferenceError: If a player has the same payoff at two outcomes
    """
    for player in range(players):
        seen: Dict[int, int] = {}
        for outcome_id in sorted(payoffs):
            value = payoffs[outcome_id][player]
            if value in seen:
                raise StrictPreferenceError(
                    f"Player {player} has payoff {value} at both "
                    f"o{seen[value]} and o{outcome_id}",
                    "STRICT_PREFERENCE",
                    {"player": player, "payoff": value, "outcomes": [seen[value], outcome_id]},
                )
            seen[value] = outcome_id


def validate_owner(node_id: int, player: int, players: int) -> None:
    """
    Validate that a decision node is owned by a declared player.

    Raises:
        UnknownPlayerError: If the owner index is out of range
    """
    if not 0 <= player < players:
        raise UnknownPlayerError(
            f"Node n{node_id} is owned by P{player} but the game has {players} players",
            "UNKNOWN_PLAYER",
            {"node": node_id, "player": player, "players": players},
        )


def validate_path(tree: "GameTree", path: Sequence[int]) -> None:
    """
    Validate that *path* runs from the root to an outcome.

    Args:
        tree: The game the path belongs to
        path: Sequence of ids

    Raises:
        UnknownNodeError: If an id is not in the tree
        GameValidationError: If consecutive ids are not parent and child,
            or if the path does not start at the root and end at an outcome
    """
    for node_id in path:
        tree.require(node_id)
    if not path or path[0] != tree.root or not tree.is_outcome(path[-1]):
        raise GameValidationError(
            "A path must start at the root and end at an outcome",
            "INVALID_PATH",
            {"path": list(path)},
        )
    for parent, child in zip(path, path[1:]):
        if child not in tree.children(parent):
            raise GameValidationError(
                f"{tree.label(child)} is not a child of {tree.label(parent)}",
                "INVALID_PATH",
                {"path": list(path)},
            )


def validate_tree(tree: "GameTree") -> None:
    """
    Validate every structural invariant of a game tree.

    Ids must be unique, payoff vectors uniform, preferences strict, decision
    nodes non-empty and owned by declared players, and every id reachable from
    the root through exactly one parent.

    Args:
        tree: Tree to validate

    Raises:
        GameValidationError: Or one of its subclasses, on the first violation
        UnknownNodeError: If a node lists a child that does not exist
    """
    for key, node in tree.nodes.items():
        if key != node.id:
            raise GameValidationError(
                f"Node stored under {key} has id {node.id}", "DUPLICATE_ID", {"id": key}
            )
    for key, outcome in tree.outcomes.items():
        if key != outcome.id:
            raise GameValidationError(
                f"Outcome stored under {key} has id {outcome.id}", "DUPLICATE_ID", {"id": key}
            )

    validate_unique_ids([*tree.nodes, *tree.outcomes])

    payoffs = {outcome.id: outcome.payoffs for outcome in tree.outcomes.values()}
    validate_payoff_arity(payoffs, tree.players)

    for node in tree.nodes.values():
        if not node.children:
            raise EmptyNodeError(
                f"Node n{node.id} has no children", "EMPTY_NODE", {"node": node.id}
            )
        validate_owner(node.id, node.player, tree.players)
        for child in node.children:
            if child not in tree.nodes and child not in tree.outcomes:
                raise UnknownNodeError(
                    f"Node n{node.id} lists unknown child {child}",
                    "UNKNOWN_NODE",
                    {"node": node.id, "child": child},
                )

    _validate_connected(tree)
    validate_strict_preferences(payoffs, tree.players)

    logger.debug(
        f"Validated game with {len(tree.nodes)} nodes and {len(tree.outcomes)} outcomes"
    )


def _validate_connected(tree: "GameTree") -> None:
    if tree.root not in tree.nodes and tree.root not in tree.outcomes:
        raise UnknownNodeError(
            f"Root {tree.root} is not part of the tree", "UNKNOWN_NODE", {"id": tree.root}
        )

    reached = {tree.root}
    stack: List[int] = [tree.root]
    while stack:
        node = tree.nodes.get(stack.pop())
        if node is None:
            continue
        for child in node.children:
            if child in reached:
                raise GameValidationError(
                    f"Id {child} has more than one parent",
                    "DISCONNECTED",
                    {"id": child},
                )
            reached.add(child)
            stack.append(child)

    unreached = sorted((set(tree.nodes) | set(tree.outcomes)) - reached)
    if unreached:
        raise GameValidationError(
            f"Ids {unreached} are not reachable from the root",
            "DISCONNECTED",
            {"ids": unreached},
        )
