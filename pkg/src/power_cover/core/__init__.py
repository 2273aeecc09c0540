"""
Core data model for power-cover.
"""

from power_cover.core.instance import (
    DpvcInstance,
    Edge,
    Incidence,
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
from power_cover.core.state import BranchState, BudgetMode, TraceEntry

__all__ = [
    "BranchState",
    "BudgetMode",
    "DpvcInstance",
    "Edge",
    "Incidence",
    "InstanceFormatError",
    "PowerAssignment",
    "TraceEntry",
    "candidate_levels",
    "format_instance",
    "format_solution",
    "is_feasible",
    "parse_instance",
    "parse_solution",
    "uncovered_edges",
]
