"""
Equation-system formalisation of the perfect prediction equilibrium

Reasoning is a walk on sets of eliminated outcomes. From a set ``U`` the
reaction path of the tree without ``U`` eliminates everything outside its
terminal node, and every preempting reaction path eliminates its target.
The sets reachable from the empty set index the implications of the system,
whose unique model is the equilibrium path. Enumeration is exhaustive and
acts as an oracle for the elimination algorithms, so it is bounded by
configuration rather than made clever.
"""

import logging
from collections import deque
from typing import Deque, Dict, FrozenSet, List, Optional, Set, Tuple

from game_core.errors import (
    EmptyTreeError,
    LogicError,
    NoUniqueSolutionError,
    PowersetBoundError,
    VariableBoundError,
)
from models.elimination import EliminationTrace
from models.game import GameTree
from models.logic import (
    Atom,
    Equation,
    EquationSystem,
    LogicResult,
    PowersetEdge,
    PowersetGraph,
    PreemptingReactionPath,
    ReactionPath,
    VerificationReport,
    format_outcome_set,
)
from services.ppe_service import live_children, solve_ppe_general
from services.quick_service import solve_ppe_quick

logger = logging.getLogger(__name__)

DEFAULT_MAX_VARS = 24
DEFAULT_MAX_VERTICES = 4096


# ============================================================================
# PATHS OF A PRUNED TREE
# ============================================================================

def _alive(tree: GameTree, removed: FrozenSet[int]) -> FrozenSet[int]:
    alive = tree.outcome_ids - frozenset(removed)
    if not alive:
        raise EmptyTreeError(
            "Every outcome has been removed, the tree has no reaction path",
            "EMPTY_TREE",
            {"removed": sorted(removed)},
        )
    return alive


def _dominant_child(
    tree: GameTree, node_id: int, player: int, alive: FrozenSet[int]
) -> Optional[int]:
    reachable = alive & tree.descendants(node_id)
    for child in live_children(tree, node_id, alive):
        inside = reachable & tree.descendants(child)
        worst_inside = min(tree.payoff(o, player) for o in inside)
        if all(tree.payoff(o, player) < worst_inside for o in reachable - inside):
            return child
    return None


def reaction_path(tree: GameTree, removed: FrozenSet[int] = frozenset()) -> ReactionPath:
    """
    The reaction path of *tree* once the outcomes in *removed* are pruned.

    From the root, the path keeps descending into the child whose surviving
    outcomes all beat every surviving outcome of its siblings for the player
    who moves. A lone surviving child always qualifies. The path stops at an
    outcome or at a node where no child dominates.

    Raises:
        EmptyTreeError: If no outcome survives
    """
    alive = _alive(tree, removed)
    nodes = [tree.root]
    while tree.is_decision(nodes[-1]):
        current = nodes[-1]
        player = tree.owner(current)
        live = live_children(tree, current, alive)
        chosen = live[0] if len(live) == 1 else _dominant_child(tree, current, player, alive)
        if chosen is None:
            break
        nodes.append(chosen)
    return ReactionPath(nodes=tuple(nodes), removed=frozenset(removed))


def preempting_paths(
    tree: GameTree, removed: FrozenSet[int] = frozenset()
) -> List[PreemptingReactionPath]:
    """
    Preempting reaction paths of *tree* once *removed* is pruned.

    Each one extends the full reaction path by a move ``k`` of its terminal
    node and targets a surviving outcome outside ``D(k)`` that the mover
    likes less than every surviving outcome below ``k``. Sorted by target,
    then move.
    """
    alive = _alive(tree, removed)
    base = reaction_path(tree, removed)
    terminal = base.terminal
    if tree.is_outcome(terminal):
        return []

    player = tree.owner(terminal)
    found = []
    for move in live_children(tree, terminal, alive):
        below = alive & tree.descendants(move)
        floor = min(tree.payoff(o, player) for o in below)
        for outcome in alive - below:
            if tree.payoff(outcome, player) < floor:
                found.append(PreemptingReactionPath(nodes=base.nodes + (move,), target=outcome))
    found.sort(key=lambda p: (p.target, p.terminal))
    return found


# ============================================================================
# OUTCOME POWERSET GRAPH
# ============================================================================

def outgoing_edges(tree: GameTree, removed: FrozenSet[int]) -> List[PowersetEdge]:
    """The reaction edge of *removed* followed by its preempting edges."""
    removed = frozenset(removed)
    reaction = reaction_path(tree, removed)
    edges = [
        PowersetEdge(
            tail=removed,
            head=removed | (tree.outcome_ids - tree.descendants(reaction.terminal)),
            kind="reaction",
            terminal=reaction.terminal,
        )
    ]
    for path in preempting_paths(tree, removed):
        edges.append(
            PowersetEdge(
                tail=removed,
                head=removed | {path.target},
                kind="preempting",
                terminal=path.terminal,
                target=path.target,
            )
        )
    return edges


def build_powerset_component(
    tree: GameTree, max_vertices: int = DEFAULT_MAX_VERTICES
) -> PowersetGraph:
    """
    Explore the component of the empty set breadth first.

    Raises:
        PowersetBoundError: If more than *max_vertices* sets are reachable
    """
    start: FrozenSet[int] = frozenset()
    seen: Set[FrozenSet[int]] = {start}
    order: List[FrozenSet[int]] = [start]
    edges: List[PowersetEdge] = []
    queue: Deque[FrozenSet[int]] = deque([start])

    while queue:
        vertex = queue.popleft()
        for edge in outgoing_edges(tree, vertex):
            edges.append(edge)
            if edge.head in seen:
                continue
            seen.add(edge.head)
            order.append(edge.head)
            if len(order) > max_vertices:
                raise PowersetBoundError(
                    f"Powerset component exceeds {max_vertices} vertices",
                    "POWERSET_BOUND",
                    {"max_vertices": max_vertices},
                )
            queue.append(edge.head)

    logger.debug(f"Powerset component: {len(order)} vertices, {len(edges)} edges")
    return PowersetGraph(vertices=tuple(order), edges=tuple(edges))


# ============================================================================
# EQUATIONS
# ============================================================================

def _eliminated(vertex: FrozenSet[int]) -> Tuple[Atom, ...]:
    return tuple(Atom(variable=o, negated=True) for o in sorted(vertex))


def generate_equations(
    tree: GameTree,
    graph: Optional[PowersetGraph] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> EquationSystem:
    """
    Build the causal-bridge, first-principle and second-principle equations.

    Causal-bridge equations come in preorder. The principle equations follow
    the discovery order of the vertex they are indexed on.

    Raises:
        PowersetBoundError: If the component has to be built and is too large
    """
    if graph is None:
        graph = build_powerset_component(tree, max_vertices)

    equations: List[Equation] = []
    for node_id in tree.preorder:
        parent = tree.parent(node_id)
        if parent is None:
            conclusion: Tuple[Atom, ...] = ()
        else:
            conclusion = (Atom(variable=parent),) + tuple(
                Atom(variable=s, negated=True) for s in tree.children(parent) if s != node_id
            )
        equations.append(
            Equation(
                tag=f"C_{tree.label(node_id)}",
                kind="C",
                premise=(Atom(variable=node_id),),
                conclusion=conclusion,
            )
        )

    for edge in graph.edges:
        if edge.kind != "preempting":
            continue
        equations.append(
            Equation(
                tag=f"P1_{{{format_outcome_set(edge.tail)}, o{edge.target}, {tree.label(edge.terminal)}}}",
                kind="P1",
                premise=_eliminated(edge.tail) + (Atom(variable=edge.target),),
                conclusion=(Atom(variable=edge.terminal),),
                vertex=edge.tail,
                target=edge.target,
                terminal=edge.terminal,
            )
        )

    for edge in graph.edges:
        if edge.kind != "reaction":
            continue
        equations.append(
            Equation(
                tag=f"P2_{{{format_outcome_set(edge.tail)}, {tree.label(edge.terminal)}}}",
                kind="P2",
                premise=_eliminated(edge.tail),
                conclusion=(Atom(variable=edge.terminal),),
                vertex=edge.tail,
                terminal=edge.terminal,
            )
        )

    return EquationSystem(variables=tree.preorder, equations=tuple(equations))


def solve_by_enumeration(
    system: EquationSystem, max_vars: int = DEFAULT_MAX_VARS
) -> Dict[int, bool]:
    """
    Find the unique assignment satisfying *system*.

    Variables are assigned in order, false before true, and every equation
    is checked as soon as all its variables are assigned. The search stops
    at the second model.

    Raises:
        VariableBoundError: If the system has more than *max_vars* variables
        NoUniqueSolutionError: If the system has no model or several
    """
    variables = system.variables
    if len(variables) > max_vars:
        raise VariableBoundError(
            f"{len(variables)} variables exceed the enumeration bound of {max_vars}",
            "VARIABLE_BOUND",
            {"variables": len(variables), "max_vars": max_vars},
        )

    position = {v: i for i, v in enumerate(variables)}
    ready: List[List[Equation]] = [[] for _ in variables]
    for equation in system.equations:
        ready[max(position[v] for v in equation.variables)].append(equation)

    models: List[Dict[int, bool]] = []
    assignment: Dict[int, bool] = {}

    def extend(index: int) -> None:
        if len(models) > 1:
            return
        if index == len(variables):
            models.append(dict(assignment))
            return
        variable = variables[index]
        for value in (False, True):
            assignment[variable] = value
            if all(e.holds(assignment) for e in ready[index]):
                extend(index + 1)
        del assignment[variable]

    extend(0)
    if len(models) != 1:
        raise NoUniqueSolutionError(
            f"Equation system has {'no' if not models else 'more than one'} solution",
            len(models),
        )
    return models[0]


def assignment_path(tree: GameTree, assignment: Dict[int, bool]) -> Tuple[int, ...]:
    """The ids set to true, in preorder; raises LogicError if they are not a path."""
    path = tuple(n for n in tree.preorder if assignment[n])
    valid = (
        bool(path)
        and path[0] == tree.root
        and tree.is_outcome(path[-1])
        and all(child in tree.children(parent) for parent, child in zip(path, path[1:]))
    )
    if not valid:
        raise LogicError(
            f"True variables {list(path)} do not form a root-to-outcome path",
            "INVALID_PATH",
            {"path": list(path)},
        )
    return path


def unlinked_discards(
    tree: GameTree, trace: EliminationTrace, system: EquationSystem
) -> Tuple[int, ...]:
    """
    Discarded outcomes that no principle equation eliminates.

    An outcome ``o`` is linked when some first-principle equation targets it,
    or some second-principle equation concludes on a node not above ``o``,
    and that equation is indexed on a set containing neither ``o`` nor the
    final outcome of the trace.
    """
    missing = []
    for outcome in sorted(trace.discarded()):
        linked = False
        for equation in system.equations:
            if equation.kind == "C":
                continue
            if outcome in equation.vertex or trace.outcome in equation.vertex:
                continue
            if equation.kind == "P1" and equation.target == outcome:
                linked = True
            elif equation.kind == "P2" and outcome not in tree.descendants(equation.terminal):
                linked = True
            if linked:
                break
        if not linked:
            missing.append(outcome)
    return tuple(missing)


# ============================================================================
# SERVICE
# ============================================================================

class LogicService:
    """Bounded solving and cross-checking through the equation system."""

    def __init__(self, max_vars: int = DEFAULT_MAX_VARS, max_vertices: int = DEFAULT_MAX_VERTICES):
        self.max_vars = max_vars
        self.max_vertices = max_vertices

    def _check_size(self, tree: GameTree) -> None:
        if tree.size > self.max_vars:
            raise VariableBoundError(
                f"{tree.size} variables exceed the enumeration bound of {self.max_vars}",
                "VARIABLE_BOUND",
                {"variables": tree.size, "max_vars": self.max_vars},
            )

    def solve(self, tree: GameTree) -> LogicResult:
        """Read the equilibrium path off the unique model of the system."""
        self._check_size(tree)
        graph = build_powerset_component(tree, self.max_vertices)
        system = generate_equations(tree, graph)
        assignment = solve_by_enumeration(system, self.max_vars)
        path = assignment_path(tree, assignment)
        logger.debug(
            f"Logic model: {len(system.equations)} equations, outcome {tree.label(path[-1])}"
        )
        return LogicResult(
            path=path,
            outcome=path[-1],
            payoffs=tree.outcomes[path[-1]].payoffs,
            assignment=assignment,
            system=system,
            graph=graph,
        )

    def verify(self, tree: GameTree) -> VerificationReport:
        """Solve through the system and compare with both elimination algorithms."""
        result = self.solve(tree)
        general = solve_ppe_general(tree)
        quick = solve_ppe_quick(tree)
        report = VerificationReport(
            result=result,
            general_path=general.path,
            quick_outcome=quick.outcome,
            never_eliminated=result.graph.never_eliminated(tree.outcome_ids),
            unlinked_discards=unlinked_discards(tree, general.trace, result.system),
        )
        if not report.agrees:
            logger.warning(
                f"Methods disagree: logic {result.path}, general {general.path}, "
                f"quick {quick.outcome}"
            )
        return report
