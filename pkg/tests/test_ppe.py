import pytest

from game_core.errors import DegenerateClassError, ForeignNodeError, InvalidStateError
from game_core.parser import parse_game
from models.elimination import NewcombianState
from models.game import GameTree
from services.ppe_service import (
    best_class,
    class_sequence,
    ppe_step,
    solve_ppe_general,
    target,
    worst_payoff,
)


def reversed_children(tree: GameTree) -> GameTree:
    """The same game with every child list reversed."""
    nodes = {
        k: node.model_copy(update={"children": tuple(reversed(node.children))})
        for k, node in tree.nodes.items()
    }
    return GameTree(players=tree.players, root=tree.root, nodes=nodes, outcomes=dict(tree.outcomes))


def witness_moves(step):
    return {d.outcome: (d.principle, d.witness.moves) for d in step.discards}


class TestNewcombianStates:
    """States, targets and worst payoffs."""

    def test_state_parts(self):
        """Test the pure and discard parts of a state."""
        state = NewcombianState(moves=(2, 1, 2))
        assert state.pure == 2
        assert state.order == 3
        assert state.discard.moves == (1, 2)
        assert NewcombianState(moves=(2,)).discard is None
        assert state.extend(1).moves == (1, 2, 1, 2)

    def test_repeated_move_rejected(self):
        """Test that consecutive moves must differ."""
        with pytest.raises(InvalidStateError):
            NewcombianState(moves=(1, 1))

    def test_target_order_one(self, gamma_tree):
        """Test that an order-1 state targets the survivors below its move."""
        survivors = gamma_tree.outcome_ids
        assert target(gamma_tree, 0, survivors, (2,)) == {7, 8, 9, 10, 11}

    def test_target_with_discard_part(self, gamma_tree):
        """Test that the discard part preempts outcomes below its worst payoff."""
        survivors = gamma_tree.outcome_ids
        assert target(gamma_tree, 0, survivors, (1, 2)) == {3}
        assert target(gamma_tree, 0, survivors, (2, 1, 2)) == {7, 9, 10, 11}

    def test_target_with_degenerate_discard_part(self, assurance_tree):
        """Test that a degenerate discard part preempts nothing."""
        survivors = frozenset({1, 4})
        assert target(assurance_tree, 0, survivors, (2,)) == {4}
        assert target(assurance_tree, 2, survivors, (4, 3)) == {4}

    def test_target_foreign_move(self, gamma_tree):
        """Test that a move outside the current node is rejected."""
        with pytest.raises(ForeignNodeError):
            target(gamma_tree, 0, gamma_tree.outcome_ids, (5,))

    def test_target_repeated_move(self, gamma_tree):
        """Test that a repeated move is an invalid state."""
        with pytest.raises(InvalidStateError):
            target(gamma_tree, 0, gamma_tree.outcome_ids, (1, 1))

    def test_worst_payoff(self, gamma_tree):
        """Test the worst payoff of a targeted set."""
        assert worst_payoff(gamma_tree, 0, frozenset({7, 9, 10, 11})) == 2
        with pytest.raises(DegenerateClassError):
            worst_payoff(gamma_tree, 0, frozenset())


class TestClassSequence:
    """Chains of best classes."""

    def test_gamma_root_chain(self, gamma_tree):
        """Test the three classes at the Γ root."""
        chain = class_sequence(gamma_tree, 0, gamma_tree.outcome_ids)
        assert [k.state.moves for k in chain] == [(2,), (1, 2), (2, 1, 2)]
        assert [k.worst_payoff for k in chain] == [0, 1, 2]
        assert chain[-1].targeted == {7, 9, 10, 11}

    def test_best_class(self, assurance_tree):
        """Test the best class at the assurance root."""
        klass = best_class(assurance_tree, 0, assurance_tree.outcome_ids)
        assert klass.pure == 2
        assert klass.targeted == {4}
        assert klass.worst_payoff == 1
        assert not klass.degenerate

    def test_worst_payoffs_increase(self, random_corpus):
        """Test that each chain has strictly increasing worst payoffs."""
        for tree in random_corpus[:300]:
            for step in solve_ppe_general(tree).trace.steps:
                payoffs = [k.worst_payoff for k in step.classes]
                assert all(a < b for a, b in zip(payoffs, payoffs[1:]))

    def test_best_class_matches_target(self, random_corpus):
        """Test that the best class targets what its state targets."""
        for tree in random_corpus[:200]:
            survivors = tree.outcome_ids
            for step in solve_ppe_general(tree).trace.steps:
                best = step.classes[-1]
                assert target(tree, step.current, survivors, best.state) == best.targeted
                survivors = step.survivors


class TestGeneralAlgorithm:
    """The forward construction of the equilibrium path."""

    def test_assurance(self, assurance_tree):
        """Test that the assurance game reaches (1, 1) in two steps."""
        result = solve_ppe_general(assurance_tree)
        assert result.path == (0, 2, 4)
        assert result.outcome == 4
        assert result.payoffs == (1, 1)
        assert len(result.trace.steps) == 2

    def test_assurance_discards(self, assurance_tree):
        """Test that o3 falls to the first principle and o1 to the second."""
        first, second = solve_ppe_general(assurance_tree).trace.steps
        assert witness_moves(first) == {3: (1, (1,)), 1: (2, (2, 1))}
        assert first.survivors == {4}
        assert second.discards == ()

    def test_gamma_path_and_survivors(self, gamma_tree):
        """Test the Γ path and the survivor set after each step."""
        result = solve_ppe_general(gamma_tree)
        assert result.path == (0, 2, 6, 11)
        assert [s.survivors for s in result.trace.steps] == [{7, 9, 10, 11}, {9, 11}, {11}]
        assert [s.index for s in result.trace.steps] == [2, 3, 4]

    def test_gamma_discards(self, gamma_tree):
        """Test principles and witnesses of every Γ discard."""
        steps = solve_ppe_general(gamma_tree).trace.steps
        assert witness_moves(steps[0]) == {
            4: (1, (2,)),
            8: (1, (1, 2)),
            3: (2, (2, 1, 2)),
        }
        assert witness_moves(steps[1]) == {10: (1, (5,)), 7: (2, (6, 5))}
        assert witness_moves(steps[2]) == {9: (2, (11,))}

    def test_take_or_leave(self, tol_tree):
        """Test that perfect prediction reaches the last pot."""
        result = solve_ppe_general(tol_tree)
        assert result.outcome == 9
        assert result.path == (0, 2, 4, 6, 8, 9)
        assert result.payoffs[0] == 5

    def test_single_outcome(self):
        """Test that a lone outcome has an empty trace."""
        result = solve_ppe_general(parse_game("(o1 7 3)"))
        assert result.path == (1,)
        assert result.trace.steps == ()

    def test_single_child_step(self):
        """Test that a lone child is taken with nothing discarded."""
        tree = parse_game("(n0 P0 (n1 P1 (o2 0 1) (o3 1 0)))")
        step = ppe_step(tree, 0, tree.outcome_ids)
        assert step.move == 1
        assert step.discards == ()
        assert step.survivors == {2, 3}

    def test_exactly_one_outcome_and_deterministic(self, random_corpus):
        """Test existence, uniqueness and determinism over the corpus."""
        for tree in random_corpus:
            first = solve_ppe_general(tree)
            assert tree.is_outcome(first.outcome)
            assert first.path[-1] == first.outcome
            assert solve_ppe_general(tree) == first

    def test_trace_consistency(self, random_corpus):
        """Test that every outcome but the final one is discarded exactly once."""
        for tree in random_corpus:
            trace = solve_ppe_general(tree).trace
            discarded = [d.outcome for s in trace.steps for d in s.discards]
            assert len(discarded) == len(set(discarded))
            assert set(discarded) | {trace.outcome} == tree.outcome_ids
            assert trace.outcome not in discarded

    def test_step_invariants(self, random_corpus):
        """Test that the mover's favourite survives and survivors share one child."""
        for tree in random_corpus:
            survivors = tree.outcome_ids
            for step in solve_ppe_general(tree).trace.steps:
                favourite = max(survivors, key=lambda o: tree.payoff(o, step.player))
                assert favourite in step.survivors
                assert step.survivors <= tree.descendants(step.move)
                survivors = step.survivors

    def test_child_order_independence(self, random_corpus):
        """Test that reversing every child list keeps the outcome."""
        for tree in random_corpus[:300]:
            assert solve_ppe_general(reversed_children(tree)).outcome == solve_ppe_general(tree).outcome
