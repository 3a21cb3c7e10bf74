import sys
import os
from typing import List

import pytest

# Add paths for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from game_core.errors import PowersetBoundError
from game_core.fixtures import fixture_path, load_fixture
from game_core.generator import random_game, random_invertible_game
from models.game import GameTree
from services.logic_service import LogicService, build_powerset_component

RANDOM_CORPUS_SIZE = 1000
LOGIC_CORPUS_SIZE = 300
INVERTIBLE_CORPUS_SIZE = 200


@pytest.fixture
def assurance_tree() -> GameTree:
    return load_fixture("assurance")


@pytest.fixture
def gamma_tree() -> GameTree:
    return load_fixture("gamma")


@pytest.fixture
def tol_tree() -> GameTree:
    return load_fixture("take_or_leave")


@pytest.fixture
def fixture_file():
    """Path of a shipped game file, by fixture name."""
    return lambda name: str(fixture_path(name))


@pytest.fixture(scope="session")
def random_corpus() -> List[GameTree]:
    """1000 games, two or three players, depth up to 5, up to 3 children."""
    return [
        random_game(seed, players=2 + seed % 2, max_depth=5, max_branching=3)
        for seed in range(RANDOM_CORPUS_SIZE)
    ]


@pytest.fixture(scope="session")
def logic_corpus() -> List[GameTree]:
    """Random games small enough for the equation-system solver."""
    corpus: List[GameTree] = []
    seed = 0
    while len(corpus) < LOGIC_CORPUS_SIZE and seed < 5000:
        tree = random_game(seed, players=2 + seed % 2, max_depth=3, max_branching=3)
        seed += 1
        if tree.size > 24:
            continue
        try:
            build_powerset_component(tree)
        except PowersetBoundError:
            continue
        corpus.append(tree)
    return corpus


@pytest.fixture(scope="session")
def invertible_corpus() -> List[GameTree]:
    return [
        random_invertible_game(seed, length=1 + seed % 8, players=2 + seed % 2)
        for seed in range(INVERTIBLE_CORPUS_SIZE)
    ]


@pytest.fixture
def logic_service() -> LogicService:
    return LogicService(max_vars=24, max_vertices=4096)
