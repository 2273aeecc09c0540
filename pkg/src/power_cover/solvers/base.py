"""
Base class for the branch-and-reduce solvers.
"""

import logging
from abc import ABC, abstractmethod
from typing import Iterable, List, Optional, Sequence, Tuple

from power_cover.core.instance import DpvcInstance, PowerAssignment, is_feasible
from power_cover.core.state import BranchState, BudgetMode
from power_cover.solvers.oracle import brute_force_opt
from power_cover.solvers.outcome import SolveOutcome, SolveStats

logger = logging.getLogger(__name__)

# (op, vertex, amount) with op one of "adjust", "set", "solve"
Move = Tuple[str, int, int]
Branch = List[Move]


def solve_component(state: BranchState, vertex: int) -> int:
    """
    Cover the residual component of ``vertex`` optimally with the oracle.

    Returns:
        Power spent on the component
    """
    inst, mapping = state.residual_instance(state.component(vertex))
    result = brute_force_opt(inst)
    for local, power in sorted(result.witness.p.items()):
        state.adjust(mapping[local], power)
    return result.opt_value


def apply_moves(state: BranchState, moves: Iterable[Move]) -> None:
    """
    Apply a sequence of moves to ``state``.

    ``adjust`` and ``set`` are the two state operations; ``solve`` covers the
    residual component of the vertex exactly.
    """
    for op, vertex, amount in moves:
        if op == "adjust":
            state.adjust(vertex, amount)
        elif op == "set":
            state.set_power(vertex, amount)
        elif op == "solve":
            solve_component(state, vertex)
        else:
            raise ValueError(f"unknown move: {op}")


class BranchingSolver(ABC):
    """
    Depth-first branch-and-reduce driver over a :class:`BranchState`.

    Subclasses implement :meth:`_search`, which reduces the current state and
    either decides it or calls :meth:`_branch`. A successful search leaves the
    state at the accepting leaf so its trace can be lifted.
    """

    name = "branching"

    def __init__(
        self,
        inst: DpvcInstance,
        budget: int,
        mode: BudgetMode = BudgetMode.POWER,
        marked: Optional[Iterable[int]] = None,
    ):
        """
        Initialize the solver.

        Args:
            inst: Instance to decide
            budget: Total power (power mode) or support (support mode) allowed
            mode: Which budget the search spends
            marked: Vertices already holding positive power
        """
        self.inst = inst
        self.budget = budget
        self.mode = mode
        self.initial_marks = set(marked or ())
        self.state = BranchState(inst, budget, mode, self.initial_marks)
        self.stats = SolveStats()

    @abstractmethod
    def _search(self) -> bool:
        """Decide the current state; True leaves the state at an accepting leaf."""

    def _branch(self, branches: Sequence[Branch], label: str) -> bool:
        """Try each branch in order, rolling back failed ones."""
        self.stats.count(label)
        for moves in branches:
            mark = self.state.checkpoint()
            apply_moves(self.state, moves)
            if self._search():
                return True
            self.state.rollback(mark)
        return False

    def _leaf(self, accepted: bool) -> bool:
        self.stats.leaves += 1
        return accepted

    def _witness(self) -> PowerAssignment:
        return self.state.lift()

    def solve(self) -> SolveOutcome:
        """
        Run the search.

        Returns:
            Decision outcome with a verified witness on YES

        Raises:
            RuntimeError: If an accepting leaf lifts to an infeasible or over-budget witness
        """
        logger.debug(f"{self.name}: n={self.inst.n}, m={self.inst.m}, budget={self.budget}")
        found = self._search()
        if not found:
            logger.debug(f"{self.name}: NO after {self.stats.nodes} nodes")
            return SolveOutcome(answer=False, stats=self.stats)

        witness = self._witness()
        if not is_feasible(self.inst, witness):
            raise RuntimeError(f"{self.name} produced an infeasible witness")
        spent = witness.value if self.mode is BudgetMode.POWER else self._support_spent(witness)
        if spent > self.budget:
            raise RuntimeError(f"{self.name} witness spends {spent}, budget was {self.budget}")
        logger.debug(f"{self.name}: YES after {self.stats.nodes} nodes, witness {witness.p}")
        return SolveOutcome(answer=True, witness=witness, stats=self.stats)

    def _support_spent(self, witness: PowerAssignment) -> int:
        return len(set(witness.p) | self.initial_marks)
