"""
Text rendering for command output: key/value reports, tables and DOT.

Every report is line oriented with a fixed key order so that output is
byte-stable for a given input.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from models.elimination import EliminationTrace, NewcombianState
from models.game import GameTree
from models.logic import VerificationReport, format_outcome_set
from models.reports import BatchStatistics, BipedRow, ComparisonReport, SolveReport


def format_payoffs(payoffs: Sequence[int]) -> str:
    return "[" + ", ".join(str(p) for p in payoffs) + "]"


def format_path(tree: GameTree, path: Sequence[int]) -> str:
    return " ".join(tree.label(n) for n in path)


def format_state(tree: GameTree, state: NewcombianState) -> str:
    return "(" + ", ".join(tree.label(m) for m in state.moves) + ")"


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def format_trace(tree: GameTree, trace: EliminationTrace) -> List[str]:
    """Indented lines describing each step and its discards."""
    lines = ["trace:"]
    for step in trace.steps:
        lines.append(
            f"  step {step.index}: {tree.label(step.current)} -> {tree.label(step.move)} "
            f"(P{step.player})"
        )
        lines.append(f"    survivors: {format_outcome_set(step.survivors)}")
        for discard in step.discards:
            lines.append(
                f"    discard o{discard.outcome}: principle {discard.principle}, "
                f"witness {format_state(tree, discard.witness)}"
            )
    return lines


def format_solve_report(tree: GameTree, report: SolveReport, with_trace: bool = False) -> str:
    lines = [
        f"method: {report.method}",
        f"outcome: {tree.label(report.outcome)}",
        f"payoffs: {format_payoffs(report.payoffs)}",
        f"path: {format_path(tree, report.path)}",
    ]
    if report.trace is not None:
        lines.append(f"steps: {len(report.trace.steps)}")
        if with_trace:
            lines.extend(format_trace(tree, report.trace))
    return "\n".join(lines) + "\n"


def format_comparison(tree: GameTree, report: ComparisonReport) -> str:
    lines = [
        f"spe outcome: {tree.label(report.spe_outcome)}",
        f"spe payoffs: {format_payoffs(report.spe_payoffs)}",
        f"ppe outcome: {tree.label(report.ppe_outcome)}",
        f"ppe payoffs: {format_payoffs(report.ppe_payoffs)}",
        f"equal: {str(report.equal).lower()}",
        f"ppe pareto improves spe: {str(report.ppe_pareto_improves_spe).lower()}",
        f"ppe pareto optimal: {str(report.ppe_pareto_optimal).lower()}",
    ]
    return "\n".join(lines) + "\n"


def format_verification(tree: GameTree, report: VerificationReport) -> str:
    result = report.result
    lines = ["equations:"]
    lines.extend(f"  {e.tag}: {e}" for e in result.system.equations)
    lines.append("component:")
    lines.extend(f"  {format_outcome_set(v)}" for v in result.graph.vertices)
    literals = [
        f"{'' if result.assignment[v] else '~'}S_{v}" for v in result.system.variables
    ]
    lines.extend(
        [
            f"assignment: {' '.join(literals)}",
            f"logic path: {format_path(tree, result.path)}",
            f"general path: {format_path(tree, report.general_path)}",
            f"quick outcome: {tree.label(report.quick_outcome)}",
            f"never eliminated: {format_outcome_set(report.never_eliminated)}",
            f"discards linked: {yes_no(report.discards_linked)}",
            f"agreement: {yes_no(report.agrees)}",
        ]
    )
    return "\n".join(lines) + "\n"


def format_biped_table(rows: Iterable[BipedRow]) -> str:
    """One row per game followed by the equal/differing counts."""
    rows = list(rows)
    lines = ["case  peter  mary   spe  ppe  equal"]
    for row in rows:
        g = row.game
        lines.append(
            f"{row.case:<4}  {g.a}{g.b}{g.c}    {g.d}{g.e}{g.f}    "
            f"o{row.report.spe_outcome}   o{row.report.ppe_outcome}   "
            f"{yes_no(row.report.equal)}"
        )
    equal = sum(r.report.equal for r in rows)
    lines.append(f"equal: {equal}")
    lines.append(f"differing: {len(rows) - equal}")
    return "\n".join(lines) + "\n"


def format_statistics(stats: BatchStatistics) -> str:
    return (
        f"games: {stats.games}\n"
        f"equal: {stats.equal}\n"
        f"differing: {stats.differing}\n"
        f"pareto improving: {stats.pareto_improving}\n"
    )


def _dot_attributes(attributes: Dict[str, str]) -> str:
    return "[" + ", ".join(f"{k}={v}" for k, v in attributes.items()) + "]"


def export_dot(tree: GameTree, path: Sequence[int], trace: Optional[EliminationTrace] = None) -> str:
    """
    Render *tree* as a DOT digraph.

    Decision nodes are labelled ``n<id>:P<owner>`` and outcomes with their
    payoffs. Vertices and edges on *path* carry ``ppe=true``; outcomes the
    trace discards carry ``discarded=<step>`` and ``principle=<1|2>``.
    """
    on_path = set(path)
    path_edges: Set[Tuple[int, int]] = set(zip(path, path[1:]))
    discarded = trace.discarded() if trace is not None else {}

    lines = ["digraph game {"]
    for node_id in tree.preorder:
        if tree.is_decision(node_id):
            attributes = {"label": f'"n{node_id}:P{tree.owner(node_id)}"'}
        else:
            payoffs = ", ".join(str(p) for p in tree.outcomes[node_id].payoffs)
            attributes = {"label": f'"({payoffs})"', "shape": "box"}
        if node_id in on_path:
            attributes["ppe"] = "true"
        if node_id in discarded:
            index, discard = discarded[node_id]
            attributes["discarded"] = str(index)
            attributes["principle"] = str(discard.principle)
        lines.append(f"  {tree.label(node_id)} {_dot_attributes(attributes)};")

    for node_id in tree.preorder:
        for child in tree.children(node_id):
            edge = f"  {tree.label(node_id)} -> {tree.label(child)}"
            if (node_id, child) in path_edges:
                edge += " [ppe=true]"
            lines.append(edge + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
