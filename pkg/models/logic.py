"""Pydantic models for the propositional equation system over path variables.

Each node or outcome ``n`` has a boolean variable ``S_n`` that is true when
``n`` lies on the equilibrium path. Equations are implications between
conjunctions of such literals.
"""

from typing import Dict, FrozenSet, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from models.game import Path

EquationKind = Literal["C", "P1", "P2"]


def variable_name(node_id: int) -> str:
    return f"S_{node_id}"


def format_outcome_set(outcomes: FrozenSet[int]) -> str:
    """``{}`` or ``{o1, o3}`` with ids in increasing order."""
    return "{" + ", ".join(f"o{o}" for o in sorted(outcomes)) + "}"


class ReactionPath(BaseModel):
    """The maximal dominance path from the root of the tree with ``removed`` pruned."""

    model_config = ConfigDict(frozen=True)

    nodes: Path
    removed: FrozenSet[int]

    @property
    def terminal(self) -> int:
        return self.nodes[-1]


class PreemptingReactionPath(BaseModel):
    """A reaction path extended by one move ``terminal`` that preempts ``target``."""

    model_config = ConfigDict(frozen=True)

    nodes: Path
    target: int

    @property
    def terminal(self) -> int:
        return self.nodes[-1]


class PowersetEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    tail: FrozenSet[int]
    head: FrozenSet[int]
    kind: Literal["reaction", "preempting"]
    terminal: int
    target: Optional[int] = None


class PowersetGraph(BaseModel):
    """Component of the empty set in the graph on eliminated-outcome sets.

    ``vertices`` are listed in breadth-first discovery order and ``edges``
    in the order they were generated.
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[FrozenSet[int], ...]
    edges: Tuple[PowersetEdge, ...]

    def __contains__(self, vertex: FrozenSet[int]) -> bool:
        return frozenset(vertex) in self.vertices

    def largest(self) -> FrozenSet[int]:
        return max(self.vertices, key=len)

    def never_eliminated(self, outcomes: FrozenSet[int]) -> FrozenSet[int]:
        """Outcomes that belong to no vertex of the component."""
        return frozenset(outcomes).difference(*self.vertices)


class Atom(BaseModel):
    """A variable or its negation."""

    model_config = ConfigDict(frozen=True)

    variable: int
    negated: bool = False

    def holds(self, assignment: Dict[int, bool]) -> bool:
        return assignment[self.variable] != self.negated

    def __str__(self) -> str:
        return f"{'~' if self.negated else ''}{variable_name(self.variable)}"


class Equation(BaseModel):
    """``premise => conclusion``; an empty side stands for ``true``."""

    model_config = ConfigDict(frozen=True)

    tag: str
    kind: EquationKind
    premise: Tuple[Atom, ...]
    conclusion: Tuple[Atom, ...]
    vertex: Optional[FrozenSet[int]] = None
    target: Optional[int] = None
    terminal: Optional[int] = None

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(atom.variable for atom in self.premise + self.conclusion)

    def holds(self, assignment: Dict[int, bool]) -> bool:
        if not all(atom.holds(assignment) for atom in self.premise):
            return True
        return all(atom.holds(assignment) for atom in self.conclusion)

    def __str__(self) -> str:
        left = " & ".join(str(a) for a in self.premise) or "true"
        right = " & ".join(str(a) for a in self.conclusion) or "true"
        return f"{left} => {right}"


class EquationSystem(BaseModel):
    """Causal-bridge, first-principle and second-principle equations, in that order."""

    model_config = ConfigDict(frozen=True)

    variables: Tuple[int, ...]
    equations: Tuple[Equation, ...]

    def of_kind(self, kind: EquationKind) -> Tuple[Equation, ...]:
        return tuple(e for e in self.equations if e.kind == kind)

    def holds(self, assignment: Dict[int, bool]) -> bool:
        return all(e.holds(assignment) for e in self.equations)


class LogicResult(BaseModel):
    """Unique model of an equation system read back as a path."""

    model_config = ConfigDict(frozen=True)

    path: Path
    outcome: int
    payoffs: Tuple[int, ...]
    assignment: Dict[int, bool]
    system: EquationSystem
    graph: PowersetGraph


class VerificationReport(BaseModel):
    """Outcome of checking the equation system against both elimination algorithms."""

    model_config = ConfigDict(frozen=True)

    result: LogicResult
    general_path: Path
    quick_outcome: int
    never_eliminated: FrozenSet[int]
    unlinked_discards: Tuple[int, ...] = ()

    @property
    def agrees(self) -> bool:
        return (
            self.result.path == self.general_path
            and self.quick_outcome == self.result.outcome
        )

    @property
    def discards_linked(self) -> bool:
        return not self.unlinked_discards
