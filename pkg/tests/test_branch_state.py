"""
Tests for the residual branching state.
"""

import pytest

from power_cover.core.instance import DpvcInstance, Edge, is_feasible
from power_cover.core.state import BranchState, BudgetMode, TraceEntry


class TestAdjust:
    """Test suite for Adjust."""

    def test_adjust_clears_edge(self):
        """Test adjusting by the full demand removes the edge and spends the budget."""
        s = BranchState(DpvcInstance.from_edges(2, [(0, 1, 3, 2)]), 10)
        s.adjust(0, 3)

        assert not s.has_edges()
        assert s.forced == {0: 3}
        assert s.budget == 7

    def test_adjust_partial_star(self):
        """Test that only demands within the amount are cleared."""
        s = BranchState(DpvcInstance.from_edges(3, [(0, 1, 2), (0, 2, 4)]), 10)
        s.adjust(0, 2)

        assert s.neighbors(0) == [2]
        assert s.weight(0, 2) == 2
        assert s.weight(2, 0) == 4

    def test_adjust_is_additive(self, directed_path):
        """Test that two unit adjusts equal one adjust of two."""
        once = BranchState(directed_path, 10)
        once.adjust(1, 2)
        twice = BranchState(directed_path, 10)
        twice.adjust(1, 1)
        twice.adjust(1, 1)

        assert once.signature() == twice.signature()
        assert once.forced == twice.forced
        assert once.budget == twice.budget

    def test_support_mode_marks(self, triangle):
        """Test that support mode marks instead of spending."""
        s = BranchState(triangle, 2, BudgetMode.SUPPORT)
        s.adjust(0, 1)

        assert s.budget == 2
        assert s.marked == {0}
        assert s.pending_support() == 1

    def test_invalid_adjust(self, single_edge):
        """Test adjusting a removed vertex or by a non-positive amount."""
        s = BranchState(single_edge, 5)
        with pytest.raises(ValueError):
            s.adjust(0, 0)
        s.set_power(0, 5)
        with pytest.raises(ValueError):
            s.adjust(0, 1)


class TestSetPower:
    """Test suite for Set."""

    def test_set_full_power(self, single_edge):
        """Test Set at the demand empties the graph."""
        s = BranchState(single_edge, 10)
        s.set_power(0, 5)

        assert not s.has_edges()
        assert s.forced == {0: 5}
        assert 0 not in s.live

    def test_set_zero_cascades(self, single_edge):
        """Test Set(u, 0) forces the neighbor to cover the edge."""
        s = BranchState(single_edge, 10)
        s.set_power(0, 0)

        assert not s.has_edges()
        assert s.forced == {1: 5}
        assert s.budget == 5

    def test_set_in_unit_triangle(self):
        """Test Set(u, 1) on a unit triangle leaves the opposite edge."""
        s = BranchState(DpvcInstance.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]), 3)
        s.set_power(0, 1)

        assert s.edges() == [Edge(1, 2, 1, 1)]

    def test_support_mode_set_costs(self, triangle):
        """Test that Set spends one unit when the power is positive or the vertex marked."""
        s = BranchState(triangle, 3, BudgetMode.SUPPORT)
        s.set_power(1, 0)
        # cascades mark 0 and 2, but Set(1, 0) itself is free
        assert s.budget == 3
        assert s.marked == {0, 2}

        s2 = BranchState(triangle, 3, BudgetMode.SUPPORT, marked=[1])
        s2.set_power(1, 0)
        assert s2.budget == 2


class TestRemoveIsolated:
    """Test suite for degree-0 removal."""

    def test_unmarked_is_free(self):
        """Test removing an unmarked isolated vertex."""
        s = BranchState(DpvcInstance(n=2), 1, BudgetMode.SUPPORT)
        s.remove_isolated(0)

        assert s.live == {1}
        assert s.budget == 1

    def test_marked_costs_once(self, single_edge):
        """Test removing a marked vertex after it covered its edges."""
        s = BranchState(single_edge, 2, BudgetMode.SUPPORT)
        s.adjust(0, 5)
        s.remove_isolated(0)

        assert s.budget == 1
        assert s.pending_support() == 0

    def test_refuses_vertex_with_edges(self, single_edge):
        """Test that a vertex with edges cannot be removed."""
        s = BranchState(single_edge, 2)
        with pytest.raises(ValueError):
            s.remove_isolated(0)


class TestUndoAndReplay:
    """Test suite for rollback, replay and lifting."""

    def test_rollback_restores(self, directed_path):
        """Test that rollback undoes a mixed sequence exactly."""
        s = BranchState(directed_path, 20)
        before = (s.signature(), dict(s.forced), s.budget, set(s.marked), list(s.trace))
        mark = s.checkpoint()
        s.reweight(2, 3, 3, 1, 2)
        s.adjust(1, 2)
        s.set_power(2, 0)
        s.rollback(mark)

        assert (s.signature(), s.forced, s.budget, s.marked, s.trace) == before

    def test_replay_reproduces_state(self, directed_path):
        """Test that replaying the trace rebuilds the same residual state."""
        s = BranchState(directed_path, 20)
        s.adjust(1, 3)
        s.set_power(3, 0)
        replayed = BranchState.replay(directed_path, s.trace, budget=20)

        assert replayed.signature() == s.signature()
        assert replayed.forced == s.forced
        assert replayed.budget == s.budget

    def test_replay_rejects_unknown_op(self, single_edge):
        """Test replaying a corrupted trace."""
        with pytest.raises(ValueError, match="unknown trace operation"):
            BranchState.replay(single_edge, [TraceEntry("jump", 0)])

    def test_conservation(self, make_corpus):
        """Test that spent budget equals forced power in power mode."""
        for inst in make_corpus(15, 6, 8, 4, True, seed=3):
            s = BranchState(inst, 1000)
            for u in range(inst.n):
                if u in s.live:
                    s.set_power(u, 0 if u % 2 else s.max_demand_of(u))
                assert 1000 - s.budget == sum(s.forced.values())

    def test_lift_after_emptying_is_feasible(self, make_corpus):
        """Test that any operation sequence emptying the graph lifts to a cover."""
        for inst in make_corpus(15, 6, 8, 4, True, seed=4):
            s = BranchState(inst, 1000)
            for u in range(inst.n):
                if u in s.live and s.degree(u):
                    s.set_power(u, s.max_demand_of(u) // 2)
            assert not s.has_edges()
            assert is_feasible(inst, s.lift())

    def test_lift_credits_reweight(self):
        """Test that a reweighted edge is credited to the endpoint covering it later."""
        inst = DpvcInstance.from_edges(3, [(0, 1, 5), (1, 2, 2)])
        s = BranchState(inst, 10)
        s.reweight(0, 1, 2, 2, 3)
        s.set_power(1, 2)

        lifted = s.lift()
        assert lifted.p == {1: 5}
        assert is_feasible(inst, lifted)
        assert 10 - s.budget == lifted.value


class TestQueries:
    """Test suite for the read-only helpers."""

    def test_pressure_and_second_neighborhood(self, directed_path):
        """Test P(u) and N²(u) on a path."""
        s = BranchState(directed_path, 10)

        assert s.pressure(1) == 1 + 2
        assert s.second_neighborhood(0) == {2}
        assert s.component(3) == [0, 1, 2, 3]

    def test_residual_instance_relabels(self, directed_path):
        """Test the dense relabeling of the residual graph."""
        s = BranchState(directed_path, 10)
        s.set_power(0, 1)
        residual, mapping = s.residual_instance()

        assert mapping == [1, 2, 3]
        assert residual.edges == [Edge(0, 1, 3, 2), Edge(1, 2, 5, 1)]
