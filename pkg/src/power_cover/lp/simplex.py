"""
Exact-rational simplex on a condensed tableau with Bland's rule.

Solves ``max c·x`` subject to ``A x ≤ b``, ``x ≥ 0`` with ``b ≥ 0``, so the
slack basis is feasible from the start.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Sequence

logger = logging.getLogger(__name__)


class SimplexTableau:
    """
    Condensed tableau over :class:`fractions.Fraction`.

    Structural variables are labeled ``0..cols-1`` and slacks
    ``cols..cols+rows-1``. ``c`` holds the reduced costs of the nonbasic
    columns and ``objective`` the current value.
    """

    def __init__(
        self,
        a: Sequence[Sequence[int]],
        b: Sequence[int],
        c: Sequence[int],
    ):
        self.rows = len(b)
        self.cols = len(c)
        if any(value < 0 for value in b):
            raise ValueError("right-hand side must be non-negative")
        self.a: List[List[Fraction]] = [[Fraction(x) for x in row] for row in a]
        self.b: List[Fraction] = [Fraction(x) for x in b]
        self.c: List[Fraction] = [Fraction(x) for x in c]
        self.objective = Fraction(0)
        self.nonbasic: List[int] = list(range(self.cols))
        self.basic: List[int] = list(range(self.cols, self.cols + self.rows))
        self.pivots = 0

    def pivot(self, i: int, j: int) -> None:
        """Exchange basic variable of row ``i`` with nonbasic variable of column ``j``."""
        piv = self.a[i][j]
        delta = self.c[j] / piv
        self.objective += delta * self.b[i]
        row = self.a[i]
        for col in range(self.cols):
            self.c[col] -= delta * row[col]
        self.c[j] = -delta
        for col in range(self.cols):
            row[col] = 1 / piv if col == j else row[col] / piv
        self.b[i] /= piv
        for k in range(self.rows):
            if k == i:
                continue
            factor = self.a[k][j]
            if not factor:
                continue
            other = self.a[k]
            for col in range(self.cols):
                other[col] = -factor / piv if col == j else other[col] - factor * row[col]
            self.b[k] -= factor * self.b[i]
        self.nonbasic[j], self.basic[i] = self.basic[i], self.nonbasic[j]
        self.pivots += 1

    def step(self) -> str:
        """One Bland pivot; returns ``optimal``, ``unbounded`` or ``pivoted``."""
        entering = [(self.nonbasic[j], j) for j in range(self.cols) if self.c[j] > 0]
        if not entering:
            return "optimal"
        _, j = min(entering)
        leaving = [
            (self.b[i] / self.a[i][j], self.basic[i], i)
            for i in range(self.rows)
            if self.a[i][j] > 0
        ]
        if not leaving:
            return "unbounded"
        _, _, i = min(leaving)
        self.pivot(i, j)
        return "pivoted"

    def solve(self) -> str:
        while True:
            status = self.step()
            if status != "pivoted":
                logger.debug(f"Simplex {status} after {self.pivots} pivots: {self.objective}")
                return status

    def primal(self) -> Dict[int, Fraction]:
        """Values of the structural variables."""
        values = {v: Fraction(0) for v in range(self.cols)}
        for i, v in enumerate(self.basic):
            if v < self.cols:
                values[v] = self.b[i]
        return values

    def dual(self) -> Dict[int, Fraction]:
        """Row multipliers, read off the reduced costs of the slack columns."""
        values = {r: Fraction(0) for r in range(self.rows)}
        for j, v in enumerate(self.nonbasic):
            if v >= self.cols:
                values[v - self.cols] = -self.c[j]
        return values
