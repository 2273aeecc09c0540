"""
Result types shared by the branching solvers.
"""

from typing import Dict, Optional

from pydantic import BaseModel, Field

from power_cover.core.instance import PowerAssignment


class SolveStats(BaseModel):
    """Search statistics of one solver run."""

    nodes: int = 0
    leaves: int = 0
    rules: Dict[str, int] = Field(default_factory=dict)

    def count(self, rule: str, times: int = 1) -> None:
        self.rules[rule] = self.rules.get(rule, 0) + times


class SolveOutcome(BaseModel):
    """
    Answer of a decision or optimization run.

    ``answer`` is the decision; ``opt_value`` is filled by optimization wrappers
    and by solvers that compute a constrained optimum along the way.
    """

    answer: bool
    opt_value: Optional[int] = None
    witness: Optional[PowerAssignment] = None
    stats: SolveStats = Field(default_factory=SolveStats)
