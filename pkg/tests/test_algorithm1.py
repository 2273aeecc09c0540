"""
Tests for the symmetric branch-and-reduce solver and the optimization wrappers.
"""

import pytest

from power_cover.core.instance import DpvcInstance, is_feasible
from power_cover.core.state import BranchState, BudgetMode
from power_cover.solvers.algorithm1 import Algorithm1Solver, algorithm1_solve, rr1, solve_pvc_k
from power_cover.solvers.optimize import minimize_power, minimize_support, power_decider
from power_cover.solvers.oracle import brute_force_min_support, brute_force_opt
from power_cover.solvers.vertex_cover import vc_subsolve, vertex_cover_decide


class TestRR1:
    """Test suite for the local-maximum reduction."""

    def test_lowers_local_maximum(self):
        """Test that a heavy middle edge drops to its heaviest neighbor edge."""
        inst = DpvcInstance.from_edges(4, [(0, 1, 2), (1, 2, 7), (2, 3, 3)])
        s = BranchState(inst, 20)

        assert rr1(s) is True
        assert s.weight(1, 2) == 3
        assert s.budget == 16

    def test_isolated_edge_untouched(self, single_edge):
        """Test that an edge with no neighbors is left alone."""
        s = BranchState(single_edge, 10)

        assert rr1(s) is False

    def test_support_mode_spends_nothing(self):
        """Test that the reduction is free when the support is the budget."""
        inst = DpvcInstance.from_edges(3, [(0, 1, 5), (1, 2, 1)])
        s = BranchState(inst, 1, BudgetMode.SUPPORT)

        assert rr1(s) is True
        assert s.budget == 1

    def test_preserves_optimum(self, pvc_corpus):
        """Test that optimum before equals optimum after plus the budget spent."""
        for inst in pvc_corpus:
            opt = brute_force_opt(inst).opt_value
            s = BranchState(inst, 1000)
            while rr1(s):
                residual, _ = s.residual_instance()
                assert brute_force_opt(residual).opt_value + (1000 - s.budget) == opt


class TestAlgorithm1:
    """Test suite for the power-bounded symmetric solver."""

    def test_rejects_directed(self, directed_path):
        """Test that asymmetric demands are refused."""
        with pytest.raises(ValueError, match="symmetric"):
            algorithm1_solve(directed_path, 10)

    def test_single_edge_threshold(self):
        """Test the decision boundary on one edge of demand 5."""
        inst = DpvcInstance.from_edges(2, [(0, 1, 5)])

        assert algorithm1_solve(inst, 4).answer is False
        outcome = algorithm1_solve(inst, 5)
        assert outcome.answer is True
        assert outcome.witness.value == 5

    def test_lp_gap(self, lp_gap):
        """Test the gap instance at and below its optimum."""
        assert algorithm1_solve(lp_gap, 4).answer is False
        assert algorithm1_solve(lp_gap, 5).answer is True

    def test_matches_oracle(self, pvc_corpus):
        """Test every decision threshold around the optimum."""
        for inst in pvc_corpus:
            opt = brute_force_opt(inst).opt_value
            yes = algorithm1_solve(inst, opt)
            assert yes.answer is True
            assert is_feasible(inst, yes.witness)
            assert yes.witness.value <= opt
            if opt > 0:
                assert algorithm1_solve(inst, opt - 1).answer is False

    def test_unit_weights_use_vertex_cover(self):
        """Test that unit residuals reach the vertex cover sub-solver."""
        inst = DpvcInstance.from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
        outcome = Algorithm1Solver(inst, 2).solve()

        assert outcome.answer is True
        assert outcome.stats.rules.get("vertex_cover", 0) >= 1

    def test_support_budget_matches_oracle(self, pvc_corpus):
        """Test the support-bounded mode against the oracle."""
        for inst in pvc_corpus:
            k = brute_force_min_support(inst)
            yes = solve_pvc_k(inst, k)
            assert yes.answer is True
            assert yes.witness.support <= k
            if k > 0:
                assert solve_pvc_k(inst, k - 1).answer is False


class TestOptimize:
    """Test suite for the budget sweeps."""

    def test_minimize_power(self, pvc_corpus, dpvc_corpus):
        """Test that the sweep finds the oracle optimum."""
        for inst in pvc_corpus[:30] + dpvc_corpus[:30]:
            outcome = minimize_power(inst)
            assert outcome.opt_value == brute_force_opt(inst).opt_value
            assert outcome.witness.value == outcome.opt_value

    def test_minimize_support(self, pvc_corpus):
        """Test that the support sweep finds the oracle minimum."""
        for inst in pvc_corpus[:30]:
            assert minimize_support(inst).opt_value == brute_force_min_support(inst)

    def test_decider_by_symmetry(self, single_edge, directed_path):
        """Test that the decider follows the instance kind."""
        assert power_decider(single_edge).__name__ == "algorithm1_solve"
        assert power_decider(directed_path).__name__ == "algorithm2_solve"

    def test_edgeless(self):
        """Test that an edgeless instance has optimum 0."""
        outcome = minimize_power(DpvcInstance(n=3))

        assert outcome.opt_value == 0
        assert outcome.witness.value == 0


class TestVertexCover:
    """Test suite for the unweighted vertex cover sub-solver."""

    def test_cycle(self):
        """Test a five-cycle, which needs three vertices."""
        graph = {v: {(v - 1) % 5, (v + 1) % 5} for v in range(5)}

        assert vertex_cover_decide(graph, 2) is None
        cover = vertex_cover_decide(graph, 3)
        assert cover is not None and len(cover) <= 3
        assert all(u in cover or v in cover for u in graph for v in graph[u])

    def test_graph_unchanged(self):
        """Test that the input graph is not modified."""
        graph = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
        vertex_cover_decide(graph, 2)

        assert graph == {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}

    def test_subsolve_requires_unit_weights(self, single_edge):
        """Test that weighted instances are refused."""
        with pytest.raises(ValueError, match="unit demands"):
            vc_subsolve(single_edge, 1)

    def test_subsolve_matches_oracle(self, make_corpus):
        """Test the sub-solver on random unit-weight graphs."""
        for inst in make_corpus(30, 10, 16, 1, False, seed=29):
            opt = brute_force_opt(inst).opt_value
            outcome = vc_subsolve(inst, opt)
            assert outcome.answer is True
            assert is_feasible(inst, outcome.witness)
            if opt:
                assert vc_subsolve(inst, opt - 1).answer is False
