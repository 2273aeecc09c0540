"""
Tests for the directed branch-and-reduce solver and its rules.
"""

import pytest

from power_cover.core.instance import DpvcInstance, is_feasible
from power_cover.core.state import BranchState
from power_cover.solvers.algorithm2 import Algorithm2Solver, algorithm2_solve
from power_cover.solvers.base import apply_moves
from power_cover.solvers.oracle import brute_force_opt
from power_cover.solvers.rules import br1, rr2, rr3, weight2_branch

BIG = 10_000


def _value(s: BranchState) -> int:
    """Budget spent so far plus the optimum of what is left."""
    residual, _ = s.residual_instance()
    return BIG - s.budget + brute_force_opt(residual).opt_value


def _check_node(solver: Algorithm2Solver, depth: int) -> None:
    s = solver.state
    before = _value(s)
    solver._reduce()
    assert _value(s) == before
    plan = solver.plan()
    if plan is None:
        return
    children = []
    for moves in plan.branches:
        mark = s.checkpoint()
        apply_moves(s, moves)
        children.append(_value(s))
        if depth:
            _check_node(solver, depth - 1)
        s.rollback(mark)
    assert min(children) == before, plan.label


class TestReductionRules:
    """Test suite for RR2 and RR3."""

    def test_rr2_pushes_heavy_edge(self):
        """Test that a vertex with little pressure hands its heaviest edge over."""
        # P(0) = 1 <= M(0) = 4
        inst = DpvcInstance.from_edges(2, [(0, 1, 4, 1)])
        s = BranchState(inst, 10)

        assert rr2(s) is True
        assert s.forced == {1: 1}
        assert not s.has_edges()

    def test_rr2_waits_under_pressure(self):
        """Test that RR2 does not fire when every vertex is pressed."""
        inst = DpvcInstance.from_edges(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])
        s = BranchState(inst, 10)

        assert rr2(s) is False

    def test_rr3_on_isolated_double_edge(self):
        """Test that a (2, 2) edge among unit demands becomes a unit edge."""
        inst = DpvcInstance.from_edges(4, [(0, 1, 2), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
        s = BranchState(inst, 10)

        assert rr3(s) is True
        assert s.weight(0, 1) == 1
        assert s.budget == 9

    def test_rules_preserve_optimum(self, dpvc_corpus, pvc_corpus):
        """Test that every reduction keeps optimum = spent + residual optimum."""
        for inst in dpvc_corpus + pvc_corpus[:30]:
            opt = brute_force_opt(inst).opt_value
            s = BranchState(inst, BIG)
            while rr2(s) or rr3(s):
                assert _value(s) == opt


class TestBranchingRules:
    """Test suite for BR1 and the weight-2 case analysis."""

    def test_br1_needs_pressure(self):
        """Test that BR1 refuses a state whose pressures all stay below 5."""
        inst = DpvcInstance.from_edges(2, [(0, 1, 4)])

        with pytest.raises(ValueError):
            br1(BranchState(inst, 10))

    def test_br1_pressure_boundary(self, single_edge):
        """Test that a pressure of exactly 5 is enough for BR1."""
        plan = br1(BranchState(single_edge, 10))

        assert plan.branches == [[("set", 0, 0)], [("adjust", 0, 1)]]

    def test_br1_branches(self):
        """Test the two branches of BR1 on a pressed star center."""
        inst = DpvcInstance.from_edges(4, [(0, v, 1, 2) for v in range(1, 4)])
        plan = br1(BranchState(inst, 10))

        assert plan.label == "br1"
        assert plan.branches == [[("set", 0, 0)], [("adjust", 0, 1)]]

    def test_weight2_needs_weight_two(self, single_edge):
        """Test that the weight-2 analysis checks its precondition."""
        with pytest.raises(ValueError):
            weight2_branch(BranchState(single_edge, 10))

    def test_weight2_all_heavy(self):
        """Test a vertex whose edges all carry demand 2 on its side."""
        inst = DpvcInstance.from_edges(3, [(0, 1, 2, 1), (0, 2, 2, 1)])
        plan = weight2_branch(BranchState(inst, 10))

        assert plan.label == "w2_all_heavy"
        assert plan.branches == [[("set", 0, 0)], [("set", 0, 2)]]

    def test_branchings_are_exhaustive(self, dpvc_corpus, pvc_corpus):
        """Test that the best child always reaches the parent optimum."""
        for inst in dpvc_corpus + pvc_corpus[:30]:
            _check_node(Algorithm2Solver(inst, BIG), depth=2)

    def test_weight_two_instances(self, make_corpus):
        """Test the branchings on instances whose demands are 1 or 2."""
        for inst in make_corpus(40, 7, 11, 2, True, seed=31):
            _check_node(Algorithm2Solver(inst, BIG), depth=3)


class TestAlgorithm2:
    """Test suite for the directed solver."""

    def test_directed_edge(self):
        """Test an edge whose cheap side decides."""
        inst = DpvcInstance.from_edges(2, [(0, 1, 5, 1)])

        assert algorithm2_solve(inst, 0).answer is False
        outcome = algorithm2_solve(inst, 1)
        assert outcome.answer is True
        assert outcome.witness.p == {1: 1}

    def test_matches_oracle_directed(self, dpvc_corpus):
        """Test every decision threshold around the optimum on directed instances."""
        for inst in dpvc_corpus:
            opt = brute_force_opt(inst).opt_value
            yes = algorithm2_solve(inst, opt)
            assert yes.answer is True
            assert is_feasible(inst, yes.witness)
            assert yes.witness.value <= opt
            if opt > 0:
                assert algorithm2_solve(inst, opt - 1).answer is False

    def test_matches_oracle_symmetric(self, pvc_corpus):
        """Test that symmetric instances are handled too."""
        for inst in pvc_corpus[:30]:
            opt = brute_force_opt(inst).opt_value
            assert algorithm2_solve(inst, opt).answer is True
            if opt > 0:
                assert algorithm2_solve(inst, opt - 1).answer is False

    def test_stats_counted(self, make_corpus):
        """Test that rule counters are filled."""
        rules = set()
        for inst in make_corpus(20, 7, 10, 3, True, seed=37):
            opt = brute_force_opt(inst).opt_value
            outcome = algorithm2_solve(inst, opt)
            assert outcome.stats.nodes >= 1
            rules |= set(outcome.stats.rules)
        assert rules
