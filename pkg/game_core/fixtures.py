"""Reference games shipped in ``games/``."""

from pathlib import Path
from typing import Dict, List

from game_core.errors import GameError
from game_core.parser import parse_game
from models.game import GameTree

GAMES_DIR = Path(__file__).resolve().parent.parent / "games"

FIXTURES: Dict[str, str] = {
    "assurance": "assurance.efg",
    "gamma": "gamma.efg",
    "take_or_leave": "take_or_leave.efg",
}


def fixture_names() -> List[str]:
    return sorted(FIXTURES)


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise GameError(
            f"Unknown fixture '{name}', expected one of {', '.join(fixture_names())}",
            "UNKNOWN_FIXTURE",
            {"name": name},
        )
    return GAMES_DIR / FIXTURES[name]


def load_fixture(name: str) -> GameTree:
    """Parse the fixture game called *name*."""
    return parse_game(fixture_path(name).read_text(encoding="utf-8"))
