"""
Seeded game generators

Random instances for property tests and the ``random`` command, plus the
deterministic Take-or-Leave family. Every generator assigns ids in preorder
and draws each player's payoffs as a permutation of ``0..k-1`` over the ``k``
outcomes, so preferences are strict by construction.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from game_core.errors import GameValidationError
from models.game import DecisionNode, GameTree, Outcome

logger = logging.getLogger(__name__)


@dataclass
class _Shape:
    """Tree shape before ids and payoffs are assigned; ``owner`` is None for leaves."""

    owner: Optional[int] = None
    children: List["_Shape"] = field(default_factory=list)


def _require(condition: bool, message: str, **details) -> None:
    if not condition:
        raise GameValidationError(message, "INVALID_PARAMETERS", details)


def _build(shape: _Shape, players: int, rng: np.random.Generator) -> GameTree:
    nodes: Dict[int, DecisionNode] = {}
    leaves: List[int] = []
    child_ids: Dict[int, List[int]] = {}
    owners: Dict[int, int] = {}

    next_id = 0
    stack: List[Tuple[_Shape, Optional[int]]] = [(shape, None)]
    while stack:
        current, parent = stack.pop()
        ident = next_id
        next_id += 1
        if parent is not None:
            child_ids[parent].append(ident)
        if current.owner is None:
            leaves.append(ident)
            continue
        owners[ident] = current.owner
        child_ids[ident] = []
        stack.extend((child, ident) for child in reversed(current.children))

    for ident, owner in owners.items():
        nodes[ident] = DecisionNode(id=ident, player=owner, children=tuple(child_ids[ident]))

    ranks = [rng.permutation(len(leaves)) for _ in range(players)]
    outcomes = {
        ident: Outcome(id=ident, payoffs=tuple(int(rank[index]) for rank in ranks))
        for index, ident in enumerate(leaves)
    }
    return GameTree(players=players, root=0, nodes=nodes, outcomes=outcomes)


def random_game(seed: int, players: int = 2, max_depth: int = 3, max_branching: int = 2) -> GameTree:
    """
    Generate a random game, deterministic in *seed*.

    The root is a decision node. Every decision node gets between 1 and
    ``max_branching`` children; a child at depth ``max_depth`` is an outcome,
    any shallower child is a decision node with probability one half.

    Args:
        seed: Seed of the numpy generator
        players: Number of players (at least 2)
        max_depth: Depth of the deepest possible outcome (at least 1)
        max_branching: Largest number of children per node (at least 1)

    Returns:
        GameTree: A valid game

    Raises:
        GameValidationError: If a parameter is out of range
    """
    _require(players >= 2, f"players must be at least 2, got {players}", players=players)
    _require(max_depth >= 1, f"max_depth must be at least 1, got {max_depth}", max_depth=max_depth)
    _require(
        max_branching >= 1,
        f"max_branching must be at least 1, got {max_branching}",
        max_branching=max_branching,
    )

    rng = np.random.default_rng(seed)
    root = _Shape(owner=int(rng.integers(players)))
    pending: List[Tuple[_Shape, int]] = [(root, 0)]
    while pending:
        shape, depth = pending.pop()
        for _ in range(int(rng.integers(1, max_branching + 1))):
            child_depth = depth + 1
            if child_depth < max_depth and rng.random() < 0.5:
                child = _Shape(owner=int(rng.integers(players)))
                pending.append((child, child_depth))
            else:
                child = _Shape()
            shape.children.append(child)

    tree = _build(root, players, rng)
    logger.debug(f"Random game seed={seed}: {len(tree.nodes)} nodes, {len(tree.outcomes)} outcomes")
    return tree


def random_invertible_game(seed: int, length: int, players: int = 2) -> GameTree:
    """
    Generate a random Take-or-Leave shaped game with *length* decision nodes.

    Every spine node but the deepest has one outcome child and one decision
    child, in random order; the deepest node has one or two outcome children.
    Consecutive spine nodes belong to different players.
    """
    _require(players >= 2, f"players must be at least 2, got {players}", players=players)
    _require(length >= 1, f"length must be at least 1, got {length}", length=length)

    rng = np.random.default_rng(seed)
    owners = [int(rng.integers(players))]
    for _ in range(length - 1):
        others = [p for p in range(players) if p != owners[-1]]
        owners.append(others[int(rng.integers(len(others)))])

    deepest = _Shape(owner=owners[-1], children=[_Shape() for _ in range(int(rng.integers(1, 3)))])
    spine = deepest
    for owner in reversed(owners[:-1]):
        pair = [_Shape(), spine]
        if rng.random() < 0.5:
            pair.reverse()
        spine = _Shape(owner=owner, children=pair)

    return _build(spine, players, rng)


def take_or_leave(length: int) -> GameTree:
    """
    The two-player Take-or-Leave game with *length* rounds.

    Round ``k`` is node ``n<2k>`` owned by player ``k % 2``, who either takes
    outcome ``o<2k+1>`` or leaves the pot to the next round. Taking pays the
    taker ``k + 1`` and the other player ``max(k - 1, 0)``. The last round
    can only take.
    """
    _require(length >= 1, f"length must be at least 1, got {length}", length=length)

    nodes: Dict[int, DecisionNode] = {}
    outcomes: Dict[int, Outcome] = {}
    for k in range(length):
        taker = k % 2
        payoffs = [max(k - 1, 0)] * 2
        payoffs[taker] = k + 1
        outcomes[2 * k + 1] = Outcome(id=2 * k + 1, payoffs=tuple(payoffs))
        children = (2 * k + 1,) if k == length - 1 else (2 * k + 1, 2 * k + 2)
        nodes[2 * k] = DecisionNode(id=2 * k, player=taker, children=children)
    return GameTree(players=2, root=0, nodes=nodes, outcomes=outcomes)
