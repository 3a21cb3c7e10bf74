"""Pydantic models for equilibrium results and elimination traces."""

from typing import Dict, FrozenSet, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from game_core.errors import InvalidStateError
from models.game import Path


class NewcombianState(BaseModel):
    """A sequence of moves at the current node.

    ``moves[0]`` is the pure part: the move actually made. The rest is the
    discard part, itself a state, describing the deviations that preempt
    outcomes of the pure part.
    """

    model_config = ConfigDict(frozen=True)

    moves: Tuple[int, ...]

    @field_validator("moves")
    @classmethod
    def _check_moves(cls, moves: Tuple[int, ...]) -> Tuple[int, ...]:
        if not moves:
            raise InvalidStateError("A Newcombian state needs at least one move", "INVALID_STATE")
        for first, second in zip(moves, moves[1:]):
            if first == second:
                raise InvalidStateError(
                    f"Consecutive moves must differ, {first} is repeated",
                    "INVALID_STATE",
                    {"moves": list(moves)},
                )
        return moves

    @property
    def pure(self) -> int:
        return self.moves[0]

    @property
    def discard(self) -> Optional["NewcombianState"]:
        if len(self.moves) == 1:
            return None
        return NewcombianState(moves=self.moves[1:])

    @property
    def order(self) -> int:
        return len(self.moves)

    def extend(self, move: int) -> "NewcombianState":
        """The state ``(move, *self.moves)``."""
        return NewcombianState(moves=(move,) + self.moves)


class NewcombianClass(BaseModel):
    """Target-equivalence class of states, kept with one representative.

    ``worst_payoff`` is None exactly when the class is degenerate, i.e. it
    targets no outcome.
    """

    model_config = ConfigDict(frozen=True)

    state: NewcombianState
    player: int
    targeted: FrozenSet[int]
    worst_payoff: Optional[int] = None

    @property
    def pure(self) -> int:
        return self.state.pure

    @property
    def degenerate(self) -> bool:
        return not self.targeted


class Discard(BaseModel):
    """An outcome removed at one step, with the principle and state that removed it."""

    model_config = ConfigDict(frozen=True)

    outcome: int
    principle: Literal[1, 2]
    witness: NewcombianState


class StepRecord(BaseModel):
    """One step of the forward construction: ``current`` moves to ``move``."""

    model_config = ConfigDict(frozen=True)

    index: int
    current: int
    player: int
    move: int
    survivors: FrozenSet[int]
    discards: Tuple[Discard, ...]
    classes: Tuple[NewcombianClass, ...]


class EliminationTrace(BaseModel):
    """All steps from the root down to the final outcome."""

    model_config = ConfigDict(frozen=True)

    steps: Tuple[StepRecord, ...]
    outcome: int

    def discarded(self) -> Dict[int, Tuple[int, Discard]]:
        """Map each discarded outcome to its step index and discard record."""
        return {
            discard.outcome: (step.index, discard)
            for step in self.steps
            for discard in step.discards
        }


class PPEResult(BaseModel):
    """Equilibrium path and outcome of the general forward construction."""

    model_config = ConfigDict(frozen=True)

    path: Path
    outcome: int
    payoffs: Tuple[int, ...]
    trace: EliminationTrace


class QuickVisit(BaseModel):
    """One node visit of the quick algorithm.

    ``threshold`` is the best payoff of the owner among the other live
    subtrees, or None when ``move`` was the only live child.
    """

    model_config = ConfigDict(frozen=True)

    node: int
    player: int
    move: int
    threshold: Optional[int] = None
    removed: FrozenSet[int]
    survivors: FrozenSet[int]


class QuickResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    path: Path
    outcome: int
    payoffs: Tuple[int, ...]
    visits: Tuple[QuickVisit, ...]


class SPEResult(BaseModel):
    """Backward-induction strategy with the path and outcome it induces."""

    model_config = ConfigDict(frozen=True)

    strategy: Dict[int, int]
    path: Path
    outcome: int
    payoffs: Tuple[int, ...]
