"""Pydantic models for comparison, enumeration and command reports."""

from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from models.elimination import EliminationTrace
from models.game import Path

BipedCase = Literal["0", "1=", "1≠", "2"]


class ComparisonReport(BaseModel):
    """Backward-induction outcome next to the perfect prediction outcome."""

    model_config = ConfigDict(frozen=True)

    spe_outcome: int
    spe_payoffs: Tuple[int, ...]
    ppe_outcome: int
    ppe_payoffs: Tuple[int, ...]
    equal: bool
    ppe_pareto_improves_spe: bool
    ppe_pareto_optimal: bool


class BipedGame(BaseModel):
    """Peter moves first: take outcome 1 ``(a, d)`` or let Mary choose
    between outcome 3 ``(b, e)`` and outcome 4 ``(c, f)``.
    """

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def to_text(self) -> str:
        return (
            f"(n0 P0 (o1 {self.a} {self.d}) "
            f"(n2 P1 (o3 {self.b} {self.e}) (o4 {self.c} {self.f})))"
        )


class BipedRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    game: BipedGame
    case: BipedCase
    report: ComparisonReport


class BatchStatistics(BaseModel):
    """How often the two equilibria coincide over a batch of games."""

    model_config = ConfigDict(frozen=True)

    games: int = 0
    equal: int = 0
    differing: int = 0
    pareto_improving: int = 0


class SolveReport(BaseModel):
    """What ``solve`` prints for one game; ``trace`` only for the general method."""

    model_config = ConfigDict(frozen=True)

    method: str
    path: Path
    outcome: int
    payoffs: Tuple[int, ...]
    trace: Optional[EliminationTrace] = None
