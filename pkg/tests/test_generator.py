import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from game_core.errors import GameValidationError
from game_core.generator import random_game, random_invertible_game, take_or_leave
from game_core.parser import game_signature, parse_game, serialize_game
from services.analysis_service import is_invertible

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestRandomGame:
    """Seeded random trees."""

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds, players=st.integers(2, 4), depth=st.integers(1, 5), branching=st.integers(1, 3))
    def test_deterministic_in_seed(self, seed, players, depth, branching):
        """Test that the same arguments give the same tree."""
        first = random_game(seed, players, depth, branching)
        second = random_game(seed, players, depth, branching)
        assert game_signature(first) == game_signature(second)

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds, players=st.integers(2, 4), depth=st.integers(1, 5), branching=st.integers(1, 3))
    def test_shape_bounds(self, seed, players, depth, branching):
        """Test depth, branching and the decision-node root."""
        tree = random_game(seed, players, depth, branching)
        assert tree.is_decision(tree.root)
        assert tree.depth <= depth
        assert all(1 <= len(node.children) <= branching for node in tree.nodes.values())
        assert tree.players == players

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds, players=st.integers(2, 4))
    def test_payoffs_are_permutations(self, seed, players):
        """Test that each player's payoffs are a permutation of 0..k-1."""
        tree = random_game(seed, players, 4, 3)
        k = len(tree.outcomes)
        for player in range(players):
            assert sorted(tree.payoff(o, player) for o in tree.outcomes) == list(range(k))

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds)
    def test_round_trip(self, seed):
        """Test that generated text parses back to the same tree."""
        tree = random_game(seed, 3, 4, 3)
        assert game_signature(parse_game(serialize_game(tree))) == game_signature(tree)

    def test_depth_one(self):
        """Test that depth one gives a root with leaf children only."""
        tree = random_game(1, 2, 1, 2)
        assert len(tree.children(tree.root)) <= 2
        assert all(tree.is_outcome(c) for c in tree.children(tree.root))

    def test_corpus_is_valid(self, random_corpus):
        """Test that the thousand-game corpus was built and validated."""
        assert len(random_corpus) == 1000
        assert {tree.players for tree in random_corpus} == {2, 3}

    @pytest.mark.parametrize(
        "arguments",
        [
            {"players": 1},
            {"max_depth": 0},
            {"max_branching": 0},
        ],
    )
    def test_invalid_parameters(self, arguments):
        """Test that out-of-range parameters are rejected."""
        with pytest.raises(GameValidationError) as exc_info:
            random_game(7, **arguments)
        assert exc_info.value.code == "INVALID_PARAMETERS"


class TestInvertibleGenerators:
    """Take-or-Leave shaped families."""

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds, length=st.integers(1, 10), players=st.integers(2, 3))
    def test_random_spines_are_invertible(self, seed, length, players):
        """Test that generated spines have the requested length and shape."""
        tree = random_invertible_game(seed, length, players)
        assert len(tree.nodes) == length
        assert is_invertible(tree)

    def test_take_or_leave_shape(self):
        """Test the deterministic family: pots and alternating takers."""
        tree = take_or_leave(4)
        assert tree.preorder == (0, 1, 2, 3, 4, 5, 6, 7)
        assert [tree.owner(n) for n in (0, 2, 4, 6)] == [0, 1, 0, 1]
        assert tree.outcomes[1].payoffs == (1, 0)
        assert tree.outcomes[3].payoffs == (0, 2)
        assert tree.outcomes[5].payoffs == (3, 1)
        assert tree.outcomes[7].payoffs == (2, 4)
        assert is_invertible(tree)

    def test_invalid_length(self):
        """Test that a spine needs at least one node."""
        with pytest.raises(GameValidationError):
            take_or_leave(0)
        with pytest.raises(GameValidationError):
            random_invertible_game(3, 0)
