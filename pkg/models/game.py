"""Pydantic models for finite perfect-information games in extensive form.

A game is an immutable rooted tree. Decision nodes are owned by a player and
list their children in file order; leaves are outcomes labelled with one
integer payoff per player. Node and outcome ids share one id space.
"""

from functools import cached_property
from types import MappingProxyType
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from game_core.errors import UnknownNodeError

# Root-to-outcome sequence of ids.
Path = Tuple[int, ...]


class Outcome(BaseModel):
    """A leaf of the tree with its payoff vector in player-index order."""

    model_config = ConfigDict(frozen=True)

    id: int
    payoffs: Tuple[int, ...]


class DecisionNode(BaseModel):
    """A node where ``player`` chooses one of ``children``."""

    model_config = ConfigDict(frozen=True)

    id: int
    player: int
    children: Tuple[int, ...]


class GameTree(BaseModel):
    """A validated game tree.

    Construction runs the structural checks of
    :func:`game_core.validation.validate_tree`, so every instance has unique
    ids, uniform payoff arity, strict preferences and non-empty decision
    nodes, and is connected from ``root``.
    """

    model_config = ConfigDict(frozen=True)

    players: int
    root: int
    nodes: Dict[int, DecisionNode]
    outcomes: Dict[int, Outcome]

    @model_validator(mode="after")
    def _check_structure(self) -> "GameTree":
        from game_core.validation import validate_tree

        validate_tree(self)
        # Read-only, so the cached maps below never go stale
        object.__setattr__(self, "nodes", MappingProxyType(dict(self.nodes)))
        object.__setattr__(self, "outcomes", MappingProxyType(dict(self.outcomes)))
        return self

    @field_serializer("nodes", "outcomes")
    def _dump_mapping(self, value: Mapping[int, Any]) -> Dict[int, Any]:
        return dict(value)

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    def is_outcome(self, node_id: int) -> bool:
        return node_id in self.outcomes

    def is_decision(self, node_id: int) -> bool:
        return node_id in self.nodes

    def require(self, node_id: int) -> int:
        """Return *node_id* if it belongs to the tree, raise otherwise."""
        if node_id not in self.nodes and node_id not in self.outcomes:
            raise UnknownNodeError(
                f"Id {node_id} is not a node or outcome of the game",
                "UNKNOWN_NODE",
                {"id": node_id},
            )
        return node_id

    def children(self, node_id: int) -> Tuple[int, ...]:
        self.require(node_id)
        node = self.nodes.get(node_id)
        return node.children if node is not None else ()

    def owner(self, node_id: int) -> int:
        self.require(node_id)
        return self.nodes[node_id].player

    def parent(self, node_id: int) -> Optional[int]:
        self.require(node_id)
        return self.parents.get(node_id)

    def payoff(self, outcome_id: int, player: int) -> int:
        return self.outcomes[outcome_id].payoffs[player]

    def label(self, node_id: int) -> str:
        """``n<id>`` for decision nodes, ``o<id>`` for outcomes."""
        return f"o{node_id}" if node_id in self.outcomes else f"n{node_id}"

    @cached_property
    def preorder(self) -> Tuple[int, ...]:
        """All ids, root first, children in stored order."""
        order: List[int] = []
        stack = [self.root]
        while stack:
            current = stack.pop()
            order.append(current)
            node = self.nodes.get(current)
            if node is not None:
                stack.extend(reversed(node.children))
        return tuple(order)

    @cached_property
    def parents(self) -> Mapping[int, int]:
        return MappingProxyType({
            child: node.id
            for node in self.nodes.values()
            for child in node.children
        })

    @cached_property
    def outcome_ids(self) -> FrozenSet[int]:
        return frozenset(self.outcomes)

    @cached_property
    def node_ids(self) -> FrozenSet[int]:
        return frozenset(self.nodes)

    @property
    def size(self) -> int:
        """Number of nodes and outcomes, i.e. of logic variables."""
        return len(self.nodes) + len(self.outcomes)

    @cached_property
    def depth(self) -> int:
        depths = {self.root: 0}
        for node_id in self.preorder:
            for child in self.children(node_id):
                depths[child] = depths[node_id] + 1
        return max(depths.values())

    @cached_property
    def descendant_map(self) -> Mapping[int, FrozenSet[int]]:
        result: Dict[int, FrozenSet[int]] = {}
        for node_id in reversed(self.preorder):
            if node_id in self.outcomes:
                result[node_id] = frozenset((node_id,))
            else:
                result[node_id] = frozenset().union(
                    *(result[child] for child in self.nodes[node_id].children)
                )
        return MappingProxyType(result)

    def descendants(self, node_id: int) -> FrozenSet[int]:
        """Outcome ids below *node_id*; an outcome is its own descendant."""
        self.require(node_id)
        return self.descendant_map[node_id]

    def ancestors(self, node_id: int) -> Path:
        """Path from the root down to *node_id*, both included."""
        self.require(node_id)
        chain = [node_id]
        while chain[-1] in self.parents:
            chain.append(self.parents[chain[-1]])
        return tuple(reversed(chain))

    def subtree(self, node_id: int) -> "GameTree":
        """The game rooted at *node_id* with the same player count."""
        self.require(node_id)
        below = set(self._subtree_ids(node_id))
        return GameTree(
            players=self.players,
            root=node_id,
            nodes={k: v for k, v in self.nodes.items() if k in below},
            outcomes={k: v for k, v in self.outcomes.items() if k in below},
        )

    def _subtree_ids(self, node_id: int) -> List[int]:
        found = []
        stack = [node_id]
        while stack:
            current = stack.pop()
            found.append(current)
            stack.extend(self.children(current))
        return found


def descendants(tree: GameTree, node_id: int) -> FrozenSet[int]:
    """Outcome ids below *node_id*; raises UnknownNodeError for foreign ids."""
    return tree.descendants(node_id)
