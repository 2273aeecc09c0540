"""
Tests for the instance and solution data model.
"""

import pytest
from pydantic import ValidationError

from power_cover.core.instance import (
    DpvcInstance,
    Edge,
    InstanceFormatError,
    PowerAssignment,
    candidate_levels,
    format_instance,
    format_solution,
    is_feasible,
    parse_instance,
    parse_solution,
    uncovered_edges,
)


class TestParseInstance:
    """Test suite for the instance file format."""

    def test_symmetric_edge(self):
        """Test a one-edge PVC file."""
        inst = parse_instance("p pvc 2 1\ne 1 2 5\n")

        assert inst.n == 2
        assert inst.edges == [Edge(0, 1, 5, 5)]
        assert inst.symmetric is True

    def test_directed_edge(self):
        """Test a one-edge DPVC file with different demands."""
        inst = parse_instance("p dpvc 2 1\ne 1 2 5 1\n")

        assert inst.edges == [Edge(0, 1, 5, 1)]
        assert inst.symmetric is False

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        text = "c generated\n\np pvc 3 2\nc middle\ne 1 2 1\ne 2 3 4\n"
        inst = parse_instance(text)

        assert inst.m == 2
        assert inst.edges[1] == Edge(1, 2, 4, 4)

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("p pvc 2 1\ne 1 1 5\n", 2, "self-loop"),
            ("p pvc 2 1\ne 1 2 0\n", 2, "demand < 1"),
            ("p pvc 2 1\ne 1 3 5\n", 2, "out of range"),
            ("p pvc 3 2\ne 1 2 1\ne 2 1 1\n", 3, "duplicate edge"),
            ("p pvc 2\n", 1, "malformed header"),
            ("e 1 2 5\n", 1, "edge before header"),
            ("p dpvc 2 1\ne 1 2 5\n", 2, "needs 4 fields"),
            ("p pvc 2 1\ne 1 x 5\n", 2, "not an integer"),
            ("p pvc 2 2\ne 1 2 5\n", 1, "declares 2 edges"),
            ("p pvc 2 0\nq\n", 2, "unknown line type"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, fragment):
        """Test that every malformed input names its line."""
        with pytest.raises(InstanceFormatError) as excinfo:
            parse_instance(text)

        assert excinfo.value.line == line
        assert fragment in str(excinfo.value)

    def test_missing_header(self):
        """Test an empty file."""
        with pytest.raises(InstanceFormatError, match="missing header"):
            parse_instance("c nothing here\n")

    def test_format_then_parse(self, directed_path, lp_gap):
        """Test that written instances read back unchanged."""
        for inst in (directed_path, lp_gap):
            assert parse_instance(format_instance(inst, comment="round trip")) == inst

    def test_format_header_kind(self, single_edge, directed_path):
        """Test that the header reflects symmetry."""
        assert format_instance(single_edge).startswith("p pvc 2 1\n")
        assert format_instance(directed_path).splitlines()[0] == "p dpvc 4 3"


class TestInstanceModel:
    """Test suite for DpvcInstance."""

    def test_validation_rejects_bad_edges(self):
        """Test that the model enforces the graph invariants."""
        with pytest.raises(ValidationError):
            DpvcInstance.from_edges(2, [(0, 0, 1)])
        with pytest.raises(ValidationError):
            DpvcInstance.from_edges(2, [(0, 1, 1), (1, 0, 2)])
        with pytest.raises(ValidationError):
            DpvcInstance.from_edges(2, [(0, 1, 0)])

    def test_derived_quantities(self, directed_path):
        """Test degree, demand and neighborhood helpers."""
        inst = directed_path

        assert inst.max_demand == 5
        assert inst.max_degree == 2
        assert inst.neighbors(1) == [0, 2]
        assert inst.vertex_max_demand(1) == 4
        assert inst.vertex_max_demand(3) == 1
        assert inst.demands() == [1, 2, 3, 4, 5]

    def test_relabel_scaled_induced(self, triangle):
        """Test the instance transformations."""
        relabeled = triangle.relabel([2, 0, 1])
        assert relabeled.edges[0] == Edge(2, 0, 3, 3)

        assert triangle.scaled(3).max_demand == 9

        sub, mapping = triangle.induced([0, 2])
        assert mapping == [0, 2]
        assert sub.edges == [Edge(0, 1, 1, 1)]

    def test_to_networkx(self, directed_path):
        """Test the networkx view keeps demands per endpoint."""
        graph = directed_path.to_networkx()

        assert graph.number_of_nodes() == 4
        assert graph.edges[0, 1]["demand"] == {0: 1, 1: 4}


class TestFeasibility:
    """Test suite for is_feasible and uncovered_edges."""

    def test_single_edge(self, single_edge):
        """Test the three single-edge cases."""
        assert is_feasible(single_edge, PowerAssignment(p={0: 5})) is True
        assert is_feasible(single_edge, PowerAssignment(p={0: 4, 1: 4})) is False

        directed = DpvcInstance.from_edges(2, [(0, 1, 5, 1)])
        assert is_feasible(directed, PowerAssignment(p={1: 1})) is True

    def test_uncovered_edges_named(self, triangle):
        """Test that the uncovered edges are reported."""
        missed = uncovered_edges(triangle, PowerAssignment(p={0: 3}))

        assert missed == [Edge(1, 2, 2, 2)]

    def test_monotone(self, make_corpus):
        """Test that raising powers never breaks feasibility."""
        for inst in make_corpus(20, 6, 8, 4, True, seed=5):
            full = PowerAssignment(p={v: inst.vertex_max_demand(v) for v in range(inst.n)})
            assert is_feasible(inst, full)
            raised = PowerAssignment(p={v: p + 1 for v, p in full.p.items()})
            assert is_feasible(inst, raised)


class TestPowerAssignment:
    """Test suite for PowerAssignment and the solution format."""

    def test_value_and_support(self):
        """Test derived value and support; zero entries are dropped."""
        a = PowerAssignment(p={0: 3, 1: 0, 4: 2})

        assert a.value == 5
        assert a.support == 2
        assert a.p == {0: 3, 4: 2}
        assert a[1] == 0

    def test_negative_power_rejected(self):
        """Test that negative powers fail validation."""
        with pytest.raises(ValidationError):
            PowerAssignment(p={0: -1})

    def test_solution_format(self):
        """Test the written solution and its one-based ids."""
        text = format_solution(PowerAssignment(p={0: 3, 2: 1}))

        assert text == "s 4 2\nv 1 3\nv 3 1\n"
        assert parse_solution(text) == PowerAssignment(p={0: 3, 2: 1})

    def test_solution_summary_mismatch(self):
        """Test that the s line must match the listed powers."""
        with pytest.raises(InstanceFormatError, match="do not match"):
            parse_solution("s 5 1\nv 1 3\n")

    def test_solution_duplicate_vertex(self):
        """Test that a vertex cannot be listed twice."""
        with pytest.raises(InstanceFormatError, match="listed twice"):
            parse_solution("v 1 3\nv 1 2\n")


class TestCandidateLevels:
    """Test suite for candidate_levels."""

    def test_isolated_vertex(self):
        """Test an isolated vertex."""
        assert candidate_levels(DpvcInstance(n=1), 0) == [0]

    def test_duplicates_collapse(self):
        """Test that equal demands appear once."""
        inst = DpvcInstance.from_edges(4, [(0, 1, 3), (0, 2, 3), (0, 3, 5)])

        assert candidate_levels(inst, 0) == [0, 3, 5]

    def test_unit_star(self):
        """Test a unit-weight vertex of degree 4."""
        inst = DpvcInstance.from_edges(5, [(0, v, 1) for v in range(1, 5)])

        assert candidate_levels(inst, 0) == [0, 1]
