import pytest

from game_core.errors import (
    DuplicateIdError,
    EmptyNodeError,
    GameSyntaxError,
    GameValidationError,
    PayoffArityError,
    StrictPreferenceError,
    UnknownNodeError,
    UnknownPlayerError,
)
from game_core.fixtures import fixture_names, fixture_path, load_fixture
from game_core.parser import game_signature, parse_game, parse_games, serialize_game, serialize_games
from game_core.validation import validate_path
from game_core.errors import GameError
from models.game import GameTree, descendants
from services.ppe_service import solve_ppe_general

ASSURANCE_TEXT = "(n0 P0 (o1 0 0) (n2 P1 (o3 -1 2) (o4 1 1)))"


class TestParseGame:
    """Reading EFG-lite text into validated trees."""

    def test_assurance_game(self):
        """Test that the assurance game keeps its ids, owners and payoffs."""
        tree = parse_game(ASSURANCE_TEXT)
        assert tree.players == 2
        assert tree.root == 0
        assert tree.children(0) == (1, 2)
        assert tree.owner(2) == 1
        assert tree.outcomes[1].payoffs == (0, 0)
        assert tree.outcomes[3].payoffs == (-1, 2)
        assert tree.outcomes[4].payoffs == (1, 1)

    def test_single_outcome_game(self):
        """Test that a lone outcome is a valid game rooted at a leaf."""
        tree = parse_game("(o1 7 3)")
        assert tree.root == 1
        assert tree.is_outcome(1)
        assert tree.players == 2
        assert tree.size == 1

    def test_whitespace_and_comments_are_ignored(self):
        """Test that layout and comments do not change the tree."""
        spaced = parse_game("; header\n(n0   P0\n\t(o1 0 0) ; safe\n (n2 P1 (o3 -1 2)\n(o4 1 1)))\n")
        assert game_signature(spaced) == game_signature(parse_game(ASSURANCE_TEXT))

    def test_three_players(self):
        """Test that the player count is the payoff arity."""
        tree = parse_game("(n0 P2 (o1 0 1 2) (o2 1 2 0))")
        assert tree.players == 3
        assert tree.owner(0) == 2

    def test_strict_preference_violation(self):
        """Test that equal payoffs for one player are rejected."""
        with pytest.raises(StrictPreferenceError) as exc_info:
            parse_game("(n0 P0 (o1 0 0) (o2 0 1))")
        assert exc_info.value.code == "STRICT_PREFERENCE"
        assert exc_info.value.details["player"] == 0

    def test_duplicate_id(self):
        """Test that an outcome reusing the id of an open node is rejected."""
        with pytest.raises(DuplicateIdError):
            parse_game("(n0 P0 (o0 1 2) (o1 2 1))")

    def test_payoff_arity_mismatch(self):
        """Test that outcomes must agree on the number of payoffs."""
        with pytest.raises(PayoffArityError):
            parse_game("(n0 P0 (o1 0 0) (o2 1))")

    def test_empty_node(self):
        """Test that a decision node needs at least one child."""
        with pytest.raises(EmptyNodeError):
            parse_game("(n0 P0 (o1 0 0) (n2 P1))")

    def test_single_player_rejected(self):
        """Test that a one-player game is not a game."""
        with pytest.raises(GameValidationError) as exc_info:
            parse_game("(n0 P0 (o1 1) (o2 2))")
        assert exc_info.value.code == "TOO_FEW_PLAYERS"

    def test_unknown_owner(self):
        """Test that nodes must be owned by a declared player."""
        with pytest.raises(UnknownPlayerError):
            parse_game("(n0 P2 (o1 0 0) (o2 1 1))")

    def test_syntax_error_position(self):
        """Test that an unexpected character reports its line and column."""
        with pytest.raises(GameSyntaxError) as exc_info:
            parse_game("(n0 P0\n  (o1 0 0)\n  (q")
        assert exc_info.value.line == 3
        assert exc_info.value.column == 4

    def test_unexpected_end_of_input(self):
        """Test that an unclosed node is a syntax error."""
        with pytest.raises(GameSyntaxError, match="end of input"):
            parse_game("(n0 P0 (o1 0 0)")

    def test_negative_id(self):
        """Test that ids must be non-negative."""
        with pytest.raises(GameSyntaxError):
            parse_game("(n-1 P0 (o1 0 0) (o2 1 1))")

    def test_trailing_game(self):
        """Test that parse_game accepts exactly one game."""
        with pytest.raises(GameSyntaxError):
            parse_game("(o1 7 3) (o2 1 2)")

    def test_empty_input(self):
        """Test that empty text holds no game."""
        with pytest.raises(GameSyntaxError):
            parse_game("  ; nothing here\n")


class TestParseGames:
    """Reading a stream of games."""

    def test_blank_line_separated_games(self):
        """Test that consecutive games are returned in order."""
        games = parse_games(f"{ASSURANCE_TEXT}\n\n(o1 7 3)\n")
        assert len(games) == 2
        assert games[0].size == 5
        assert games[1].root == 1

    def test_empty_stream(self):
        """Test that a stream needs at least one game."""
        with pytest.raises(GameSyntaxError):
            parse_games("")

    def test_error_in_second_game(self):
        """Test that a broken later game fails the whole stream."""
        with pytest.raises(StrictPreferenceError):
            parse_games("(o1 7 3)\n(n0 P0 (o1 0 0) (o2 0 1))")


class TestSerializeGame:
    """Writing trees back to text."""

    def test_assurance_canonical_text(self, assurance_tree):
        """Test the canonical single-line form of the assurance game."""
        assert serialize_game(assurance_tree) == ASSURANCE_TEXT

    def test_single_outcome(self):
        """Test that a lone outcome serializes to itself."""
        assert serialize_game(parse_game("(o1 7 3)")) == "(o1 7 3)"

    def test_fixtures_round_trip(self):
        """Test that every fixture survives a write and re-read."""
        for name in fixture_names():
            tree = load_fixture(name)
            assert game_signature(parse_game(serialize_game(tree))) == game_signature(tree)

    def test_gamma_round_trip_solves_the_same(self, gamma_tree):
        """Test that the re-read Γ game has the same equilibrium path."""
        reread = parse_game(serialize_game(gamma_tree))
        assert solve_ppe_general(reread).path == (0, 2, 6, 11)

    def test_random_round_trip(self, random_corpus):
        """Test round-trip identity over the random corpus."""
        for tree in random_corpus[:200]:
            assert game_signature(parse_game(serialize_game(tree))) == game_signature(tree)

    def test_serialize_games(self, assurance_tree):
        """Test that several games come back one per line."""
        text = serialize_games([assurance_tree, parse_game("(o1 7 3)")])
        assert text == f"{ASSURANCE_TEXT}\n(o1 7 3)\n"
        assert len(parse_games(text)) == 2


class TestTreeQueries:
    """Structural queries on GameTree."""

    def test_descendants(self, assurance_tree):
        """Test outcome descendants of nodes and outcomes."""
        assert descendants(assurance_tree, 2) == {3, 4}
        assert descendants(assurance_tree, 0) == {1, 3, 4}
        assert descendants(assurance_tree, 3) == {3}

    def test_descendants_unknown_id(self, assurance_tree):
        """Test that a foreign id is rejected."""
        with pytest.raises(UnknownNodeError):
            descendants(assurance_tree, 99)

    def test_descendants_is_union_over_children(self, random_corpus):
        """Test that a node's descendants are the union over its children."""
        for tree in random_corpus[:100]:
            for node_id in tree.nodes:
                union = frozenset().union(*(tree.descendants(c) for c in tree.children(node_id)))
                assert tree.descendants(node_id) == union

    def test_structure(self, gamma_tree):
        """Test parents, ancestors, depth, size and labels."""
        assert gamma_tree.parent(6) == 2
        assert gamma_tree.parent(0) is None
        assert gamma_tree.ancestors(11) == (0, 2, 6, 11)
        assert gamma_tree.depth == 3
        assert gamma_tree.size == 12
        assert gamma_tree.preorder == (0, 1, 3, 4, 2, 5, 7, 8, 6, 9, 10, 11)
        assert gamma_tree.label(6) == "n6"
        assert gamma_tree.label(11) == "o11"

    def test_subtree(self, gamma_tree):
        """Test that a subtree keeps ids, owners and the player count."""
        sub = gamma_tree.subtree(6)
        assert sub.root == 6
        assert sub.outcome_ids == {9, 10, 11}
        assert sub.players == 2
        assert sub.owner(6) == 0

    def test_tree_is_read_only(self, gamma_tree):
        """Test that node and outcome tables cannot be changed behind the cached maps."""
        assert gamma_tree.descendants(6) == {9, 10, 11}
        with pytest.raises(TypeError):
            gamma_tree.outcomes[12] = gamma_tree.outcomes[11]
        with pytest.raises(TypeError):
            del gamma_tree.nodes[6]
        with pytest.raises(TypeError):
            gamma_tree.parents[11] = 0
        assert gamma_tree.descendants(6) == {9, 10, 11}
        assert gamma_tree.size == 12

    def test_dump_has_plain_tables(self, assurance_tree):
        """Test that a dumped tree rebuilds an equal tree."""
        dumped = assurance_tree.model_dump()
        assert type(dumped["nodes"]) is dict
        assert dumped["outcomes"][4] == {"id": 4, "payoffs": (1, 1)}
        assert game_signature(GameTree(**dumped)) == game_signature(assurance_tree)

    def test_validate_path(self, assurance_tree):
        """Test that only root-to-outcome paths are accepted."""
        validate_path(assurance_tree, (0, 2, 4))
        with pytest.raises(GameValidationError):
            validate_path(assurance_tree, (0, 4))
        with pytest.raises(GameValidationError):
            validate_path(assurance_tree, (2, 4))


class TestFixtures:
    """Shipped reference games."""

    def test_names(self):
        """Test the fixture catalogue."""
        assert fixture_names() == ["assurance", "gamma", "take_or_leave"]

    def test_unknown_fixture(self):
        """Test that an unknown name raises with its code."""
        with pytest.raises(GameError) as exc_info:
            fixture_path("prisoners")
        assert exc_info.value.code == "UNKNOWN_FIXTURE"
