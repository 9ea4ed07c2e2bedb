"""
Dense tableau simplex for maximize c.x subject to A x <= b, x >= 0.

Bland's rule picks entering and leaving variables, so degenerate pivots
cannot cycle. Rows with negative right-hand side get an artificial variable
and a phase-one objective.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.errors import DomainError
from utils.logger import setup_logger

logger = setup_logger(__name__)

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'
ITERATION_LIMIT = 'iteration_limit'

DEFAULT_TOLERANCE = 1e-11
DEFAULT_MAX_ITERATIONS = 50_000


@dataclass
class SimplexResult:
    status: str
    x: Optional[np.ndarray]
    objective: Optional[float]
    duals: Optional[np.ndarray]
    iterations: int
    dual_objective: Optional[float] = None

    @property
    def duality_gap(self) -> Optional[float]:
        if self.objective is None or self.dual_objective is None:
            return None
        return abs(self.objective - self.dual_objective)


class TableauSimplex:
    """
    Tableau layout: columns [x (n) | slack (m) | artificial (k) | rhs],
    one row per constraint plus the objective row of reduced costs.
    """

    def __init__(self, c, A_ub, b_ub, tol: float = DEFAULT_TOLERANCE,
                 max_iterations: int = DEFAULT_MAX_ITERATIONS):
        self.c = np.asarray(c, dtype=np.float64).reshape(-1)
        self.A = np.asarray(A_ub, dtype=np.float64)
        self.b = np.asarray(b_ub, dtype=np.float64).reshape(-1)
        if self.A.ndim != 2 or self.A.shape != (self.b.shape[0], self.c.shape[0]):
            raise DomainError(f"inconsistent LP shapes: A {self.A.shape}, b {self.b.shape}, c {self.c.shape}")
        self.tol = tol
        self.max_iterations = max_iterations
        self.iterations = 0

    def _pivot(self, T: np.ndarray, row: int, col: int):
        T[row] /= T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= np.outer(factors, T[row])

    def _run(self, T: np.ndarray, basis: np.ndarray, allowed: int) -> str:
        """Optimize the tableau in place over the first `allowed` columns"""
        m = T.shape[0] - 1
        while True:
            if self.iterations >= self.max_iterations:
                return ITERATION_LIMIT
            reduced = T[-1, :allowed]
            candidates = np.nonzero(reduced < -self.tol)[0]
            if candidates.size == 0:
                return OPTIMAL
            # Bland: lowest index with negative reduced cost
            col = int(candidates[0])
            column = T[:m, col]
            positive = np.nonzero(column > self.tol)[0]
            if positive.size == 0:
                return UNBOUNDED
            ratios = T[positive, -1] / column[positive]
            best = ratios.min()
            ties = positive[ratios <= best + self.tol * max(1.0, abs(best))]
            # Bland: among ties, leave the basic variable with the lowest index
            row = int(ties[np.argmin(basis[ties])])
            self._pivot(T, row, col)
            basis[row] = col
            self.iterations += 1

    def solve(self) -> SimplexResult:
        m, n = self.A.shape
        negative = np.nonzero(self.b < 0)[0]
        k = negative.size
        width = n + m + k + 1

        T = np.zeros((m + 1, width))
        T[:m, :n] = self.A
        T[:m, n:n + m] = np.eye(m)
        T[:m, -1] = self.b
        basis = np.arange(n, n + m)

        if k:
            T[negative, :] *= -1.0
            for offset, row in enumerate(negative):
                T[row, n + m + offset] = 1.0
                basis[row] = n + m + offset
            # Phase one: maximize -sum(artificial); reduced costs are minus the row sums
            T[-1, :] = 0.0
            T[-1, n + m:n + m + k] = 1.0
            for row in negative:
                T[-1] -= T[row]
            status = self._run(T, basis, n + m + k)
            if status == ITERATION_LIMIT:
                return SimplexResult(status, None, None, None, self.iterations)
            if T[-1, -1] < -1e-9:
                logger.debug(f"Phase one ended with infeasibility {-T[-1, -1]:.3e}")
                return SimplexResult(INFEASIBLE, None, None, None, self.iterations)
            for row in range(m):
                if basis[row] >= n + m:
                    nonzero = np.nonzero(np.abs(T[row, :n + m]) > self.tol)[0]
                    if nonzero.size:
                        self._pivot(T, row, int(nonzero[0]))
                        basis[row] = int(nonzero[0])
            # Drop artificial columns; a row still holding one is redundant and all-zero
            T = np.hstack([T[:, :n + m], T[:, -1:]])

        # Phase two objective row: -c, then eliminate basic columns
        T[-1, :] = 0.0
        T[-1, :n] = -self.c
        for row in range(m):
            col = basis[row]
            if col < n + m and T[-1, col] != 0.0:
                T[-1] -= T[-1, col] * T[row]

        status = self._run(T, basis, n + m)
        if status != OPTIMAL:
            return SimplexResult(status, None, None, None, self.iterations)

        x = np.zeros(n + m)
        for row in range(m):
            if basis[row] < n + m:
                x[basis[row]] = T[row, -1]
        # Reduced cost of slack i is the dual price of constraint i
        duals = T[-1, n:n + m].copy()
        refined = self._refine(basis)
        if refined is not None:
            x, duals = refined
        solution = x[:n]
        objective = float(self.c @ solution)
        return SimplexResult(OPTIMAL, solution, objective, duals, self.iterations,
                             dual_objective=float(self.b @ duals))

    def _refine(self, basis: np.ndarray):
        """
        Recompute primal and dual values of the final basis from the original data.

        Returns None when the basis still holds an artificial column, is singular,
        or the recomputed point leaves the feasible region by more than the tolerance.
        """
        m, n = self.A.shape
        if np.any(basis >= n + m):
            return None
        full = np.hstack([self.A, np.eye(m)])
        B = full[:, basis]
        try:
            x_B = np.linalg.solve(B, self.b)
            duals = np.linalg.solve(B.T, np.concatenate([self.c, np.zeros(m)])[basis])
        except np.linalg.LinAlgError:
            return None
        if x_B.min() < -1e-9:
            return None
        x = np.zeros(n + m)
        x[basis] = np.maximum(x_B, 0.0)
        return x, duals


def solve_lp(c, A_ub, b_ub, tol: float = DEFAULT_TOLERANCE,
             max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SimplexResult:
    """Maximize c.x subject to A_ub x <= b_ub and x >= 0"""
    return TableauSimplex(c, A_ub, b_ub, tol=tol, max_iterations=max_iterations).solve()
