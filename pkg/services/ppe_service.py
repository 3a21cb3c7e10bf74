"""
Perfect prediction equilibrium, general construction

The equilibrium path is built from the root. At each step the player at the
current node ``c`` faces the surviving outcomes ``I``. Every move comes with
the deviations that would follow it, described by a Newcombian state, and
each state targets the survivors that stay reachable once everything it
preempts is removed. States that target the same outcomes form a class. The
best class is the end of a chain of classes with strictly increasing worst
payoffs. Its pure part is the next move and its targeted set becomes the
new ``I``.
"""

import logging
from typing import FrozenSet, List, Sequence, Set, Tuple, Union

from game_core.errors import DegenerateClassError, ForeignNodeError
from models.elimination import (
    Discard,
    EliminationTrace,
    NewcombianClass,
    NewcombianState,
    PPEResult,
    StepRecord,
)
from models.game import GameTree

logger = logging.getLogger(__name__)

StateLike = Union[NewcombianState, Sequence[int]]


def _as_state(eta: StateLike) -> NewcombianState:
    if isinstance(eta, NewcombianState):
        return eta
    return NewcombianState(moves=tuple(eta))


def worst_payoff(tree: GameTree, player: int, targeted: FrozenSet[int]) -> int:
    """
    Lowest payoff of *player* over *targeted*.

    Raises:
        DegenerateClassError: If *targeted* is empty
    """
    if not targeted:
        raise DegenerateClassError(
            "A degenerate class targets no outcome and has no worst payoff",
            "DEGENERATE_CLASS",
            {"player": player},
        )
    return min(tree.payoff(o, player) for o in targeted)


def target(
    tree: GameTree, c_prev: int, i_prev: FrozenSet[int], eta: StateLike
) -> FrozenSet[int]:
    """
    Outcomes of *i_prev* that the state *eta* at *c_prev* still targets.

    An order-1 state targets the survivors below its move. A longer state
    targets the survivors below its pure part minus those its discard part
    preempts: the ones worse, for the player at *c_prev*, than everything
    the discard part targets. A degenerate discard part preempts nothing.

    Raises:
        InvalidStateError: If two consecutive moves are equal
        ForeignNodeError: If a move is not a child of *c_prev*
    """
    state = _as_state(eta)
    children = tree.children(c_prev)
    for move in state.moves:
        if move not in children:
            raise ForeignNodeError(
                f"Move {move} is not a child of {tree.label(c_prev)}",
                "FOREIGN_NODE",
                {"node": c_prev, "move": move},
            )

    player = tree.owner(c_prev)
    targeted: FrozenSet[int] = frozenset()
    for position, move in enumerate(reversed(state.moves)):
        below = i_prev & tree.descendants(move)
        if position > 0 and targeted:
            floor = worst_payoff(tree, player, targeted)
            below = frozenset(o for o in below if tree.payoff(o, player) > floor)
        targeted = below
    return targeted


def live_children(tree: GameTree, node_id: int, survivors: FrozenSet[int]) -> Tuple[int, ...]:
    """Children of *node_id* with at least one surviving outcome below them."""
    return tuple(c for c in tree.children(node_id) if survivors & tree.descendants(c))


def class_sequence(
    tree: GameTree, c_prev: int, i_prev: FrozenSet[int]
) -> Tuple[NewcombianClass, ...]:
    """
    The chain of best classes of increasing order at *c_prev*.

    The first class is the order-1 class with the highest worst payoff.
    Each next class prefixes the previous one with the sibling move whose
    resulting class is non-degenerate with the highest worst payoff. The
    chain stops when every such extension is degenerate; its last element
    is the best class.
    """
    player = tree.owner(c_prev)
    candidates = live_children(tree, c_prev, i_prev)
    assert candidates, f"no survivors below {tree.label(c_prev)}"

    def order_one(move: int) -> NewcombianClass:
        targeted = i_prev & tree.descendants(move)
        return NewcombianClass(
            state=NewcombianState(moves=(move,)),
            player=player,
            targeted=targeted,
            worst_payoff=worst_payoff(tree, player, targeted),
        )

    chain: List[NewcombianClass] = [max(map(order_one, candidates), key=_by_worst_payoff)]
    while True:
        previous = chain[-1]
        extensions = []
        for move in candidates:
            if move == previous.pure:
                continue
            targeted = frozenset(
                o for o in i_prev & tree.descendants(move)
                if tree.payoff(o, player) > previous.worst_payoff
            )
            if targeted:
                extensions.append(
                    NewcombianClass(
                        state=previous.state.extend(move),
                        player=player,
                        targeted=targeted,
                        worst_payoff=worst_payoff(tree, player, targeted),
                    )
                )
        if not extensions:
            return tuple(chain)
        chain.append(max(extensions, key=_by_worst_payoff))


def _by_worst_payoff(klass: NewcombianClass) -> int:
    return klass.worst_payoff


def best_class(tree: GameTree, c_prev: int, i_prev: FrozenSet[int]) -> NewcombianClass:
    """The highest class at *c_prev*: its pure part is the move, its targets survive."""
    return class_sequence(tree, c_prev, i_prev)[-1]


def _discards(
    tree: GameTree, i_prev: FrozenSet[int], chain: Tuple[NewcombianClass, ...]
) -> Tuple[Discard, ...]:
    """Attribute every removed outcome to the first class in the chain that preempts it."""
    recorded: Set[int] = set()
    result: List[Discard] = []
    last = len(chain) - 1
    for position, klass in enumerate(chain):
        outside = i_prev - tree.descendants(klass.pure)
        hit = sorted(
            o for o in outside
            if o not in recorded and tree.payoff(o, klass.player) < klass.worst_payoff
        )
        for outcome in hit:
            result.append(
                Discard(
                    outcome=outcome,
                    principle=2 if position == last else 1,
                    witness=klass.state,
                )
            )
        recorded.update(hit)
    return tuple(result)


def ppe_step(
    tree: GameTree, c_prev: int, i_prev: FrozenSet[int], index: int = 2
) -> StepRecord:
    """
    One step of the construction at decision node *c_prev*.

    Args:
        tree: The game
        c_prev: Current decision node
        i_prev: Surviving outcomes, all below *c_prev*
        index: Step number, 2 for the move at the root

    Returns:
        StepRecord: Move, new survivors and every discarded outcome
    """
    chain = class_sequence(tree, c_prev, i_prev)
    best = chain[-1]
    discards = _discards(tree, i_prev, chain)
    assert len(discards) + len(best.targeted) == len(i_prev)

    logger.debug(
        f"Step {index}: {tree.label(c_prev)} -> {tree.label(best.pure)}, "
        f"{len(best.targeted)} survivor(s), {len(discards)} discard(s)"
    )
    return StepRecord(
        index=index,
        current=c_prev,
        player=best.player,
        move=best.pure,
        survivors=best.targeted,
        discards=discards,
        classes=chain,
    )


def solve_ppe_general(tree: GameTree) -> PPEResult:
    """
    Compute the equilibrium path step by step from the root.

    Returns:
        PPEResult: Path, outcome and the full elimination trace. A game made
        of a single outcome has an empty trace.
    """
    current = tree.root
    survivors = tree.descendants(current)
    path = [current]
    steps: List[StepRecord] = []
    index = 2
    while tree.is_decision(current):
        step = ppe_step(tree, current, survivors, index)
        steps.append(step)
        current, survivors = step.move, step.survivors
        path.append(current)
        index += 1

    assert survivors == {current}
    return PPEResult(
        path=tuple(path),
        outcome=current,
        payoffs=tree.outcomes[current].payoffs,
        trace=EliminationTrace(steps=tuple(steps), outcome=current),
    )
