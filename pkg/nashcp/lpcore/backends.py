"""
LP backend seam.

Any object with a `name` and a `solve(model) -> LpResult` method can stand in
for the built-in simplex. The HiGHS backend from scipy is available for
cross-checking larger models.
"""

import math
from typing import Optional, Protocol

import numpy as np
from scipy.optimize import linprog

from .model import ConstraintSense, LpModel, LpResult, LpStatus, ObjectiveSense
from .simplex import SimplexSolver
from ..config import get_settings
from ..errors import SolverError


class LpBackend(Protocol):
    name: str

    def solve(self, model: LpModel) -> LpResult:
        ...


class ScipyBackend:
    """HiGHS through scipy.optimize.linprog."""

    name = 'scipy'

    def solve(self, model: LpModel) -> LpResult:
        c = model.objective
        if model.sense is ObjectiveSense.MAXIMIZE:
            c = -c
        matrix = model.matrix()
        rhs = model.rhs()
        upper_rows, upper_rhs, eq_rows, eq_rhs = [], [], [], []
        for r, constraint in enumerate(model.constraints):
            if constraint.sense is ConstraintSense.LE:
                upper_rows.append(matrix[r])
                upper_rhs.append(rhs[r])
            elif constraint.sense is ConstraintSense.GE:
                upper_rows.append(-matrix[r])
                upper_rhs.append(-rhs[r])
            else:
                eq_rows.append(matrix[r])
                eq_rhs.append(rhs[r])
        bounds = [
            (v.lower if math.isfinite(v.lower) else None, v.upper if math.isfinite(v.upper) else None)
            for v in model.variables
        ]
        result = linprog(
            c,
            A_ub=np.array(upper_rows) if upper_rows else None,
            b_ub=np.array(upper_rhs) if upper_rows else None,
            A_eq=np.array(eq_rows) if eq_rows else None,
            b_eq=np.array(eq_rhs) if eq_rows else None,
            bounds=bounds,
            method='highs',
        )
        if result.status == 2:
            return LpResult(LpStatus.INFEASIBLE, iterations=int(result.nit), backend=self.name)
        if result.status == 3:
            return LpResult(LpStatus.UNBOUNDED, iterations=int(result.nit), backend=self.name)
        if result.status != 0:
            raise SolverError(f"HiGHS failed: {result.message}")
        values = np.asarray(result.x, dtype=float)
        return LpResult(
            LpStatus.OPTIMAL,
            values,
            model.evaluate_objective(values),
            int(result.nit),
            backend=self.name,
        )


def get_backend(name: Optional[str] = None) -> LpBackend:
    """Backend by name; defaults to the configured one."""
    chosen = name or get_settings().lp_backend
    if chosen == 'simplex':
        return SimplexSolver()
    if chosen == 'scipy':
        return ScipyBackend()
    raise SolverError(f"Unknown LP backend '{chosen}'")


def solve_lp(model: LpModel, backend: Optional[LpBackend] = None) -> LpResult:
    """
    Solve a model with the given backend (the built-in simplex by default).

    Returns:
        LpResult with an Optimal, Infeasible or Unbounded status
    """
    return (backend or SimplexSolver()).solve(model)
