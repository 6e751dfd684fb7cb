"""
Dense Two-Phase Simplex

This module implements the built-in LP solver:
1. Conversion of a bounded-variable LpModel to standard form (x >= 0, rhs >= 0)
2. Phase 1 on artificial variables, then removal of artificials and redundant rows
3. Phase 2 with Bland's rule (lowest-index entering column, lowest-index leaving
   basis variable among ratio ties)

The tableau is a dense numpy array whose last row holds reduced costs. It is
periodically rebuilt from the original rows and the current basis, and the
final point is checked against the model before it is reported optimal. The
solver is deterministic: the same model always yields bit-identical results.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import structlog

from .feasibility import check_feasible
from .model import ConstraintSense, LpModel, LpResult, LpStatus, ObjectiveSense
from ..config import FEASIBILITY_TOL, PIVOT_TOL, RATIO_PIVOT_TOL
from ..errors import SolverError

logger = structlog.get_logger(__name__)


@dataclass
class _StandardForm:
    """min c·y s.t. A y (sense) b, y >= 0, with x = offset + Σ sign·y per variable."""
    A: np.ndarray
    b: np.ndarray
    senses: List[ConstraintSense]
    c: np.ndarray
    terms: List[Tuple[float, List[Tuple[int, float]]]]

    @classmethod
    def from_model(cls, model: LpModel) -> '_StandardForm':
        terms: List[Tuple[float, List[Tuple[int, float]]]] = []
        upper_rows: List[Tuple[int, float]] = []
        columns = 0
        for var in model.variables:
            if math.isfinite(var.lower):
                terms.append((var.lower, [(columns, 1.0)]))
                if math.isfinite(var.upper):
                    upper_rows.append((columns, var.upper - var.lower))
                columns += 1
            elif math.isfinite(var.upper):
                terms.append((var.upper, [(columns, -1.0)]))
                columns += 1
            else:
                terms.append((0.0, [(columns, 1.0), (columns + 1, -1.0)]))
                columns += 2

        rows: List[np.ndarray] = []
        rhs: List[float] = []
        senses: List[ConstraintSense] = []
        for constraint in model.constraints:
            row = np.zeros(columns)
            value = constraint.rhs
            for index, coefficient in constraint.coefficients:
                offset, parts = terms[index]
                value -= coefficient * offset
                for column, sign in parts:
                    row[column] += coefficient * sign
            rows.append(row)
            rhs.append(value)
            senses.append(constraint.sense)
        for column, width in upper_rows:
            row = np.zeros(columns)
            row[column] = 1.0
            rows.append(row)
            rhs.append(width)
            senses.append(ConstraintSense.LE)

        c = np.zeros(columns)
        for index, coefficient in enumerate(model.objective):
            for column, sign in terms[index][1]:
                c[column] += coefficient * sign
        if model.sense is ObjectiveSense.MAXIMIZE:
            c = -c

        A = np.vstack(rows) if rows else np.zeros((0, columns))
        return cls(A, np.array(rhs, dtype=float), senses, c, terms)

    def recover(self, y: np.ndarray) -> np.ndarray:
        return np.array([offset + sum(sign * y[col] for col, sign in parts) for offset, parts in self.terms])


def _pivot_col(T: np.ndarray, allowed: int, tol: float) -> Optional[int]:
    """Bland: lowest-index column with a negative reduced cost."""
    candidates = np.flatnonzero(T[-1, :allowed] < -tol)
    return int(candidates[0]) if candidates.size else None


def _pivot_row(T: np.ndarray, basis: List[int], pivcol: int, tol: float, ratio_tol: float) -> Optional[int]:
    """
    Minimum ratio test over rows whose pivot element clears `ratio_tol`.

    Basic values that drifted below zero count as zero. Elements between `tol`
    and `ratio_tol` are only used when no element clears `ratio_tol`. Ties go
    to the row whose basic variable has the lowest index.
    """
    column = T[:-1, pivcol]
    eligible = np.flatnonzero(column > max(ratio_tol, tol))
    if not eligible.size:
        eligible = np.flatnonzero(column > tol)
    if not eligible.size:
        return None
    ratios = np.maximum(T[eligible, -1], 0.0) / column[eligible]
    best = float(ratios.min())
    tied = eligible[ratios <= best + 1e-12 * max(1.0, best)]
    return int(min(tied, key=lambda row: basis[row]))


def _apply_pivot(T: np.ndarray, basis: List[int], pivrow: int, pivcol: int) -> None:
    T[pivrow] /= T[pivrow, pivcol]
    factors = T[:, pivcol].copy()
    factors[pivrow] = 0.0
    T -= np.outer(factors, T[pivrow])
    basis[pivrow] = pivcol


def _refactor(T: np.ndarray, original: np.ndarray, basis: List[int], cost: np.ndarray) -> bool:
    """Rebuild the tableau as B⁻¹·original with fresh reduced costs; False when B is singular."""
    if not basis:
        T[-1] = cost
        return True
    B = original[:, basis]
    try:
        rows = np.linalg.solve(B, original)
    except np.linalg.LinAlgError:
        return False
    scale = max(1.0, float(np.abs(original).max(initial=0.0)))
    if not np.all(np.isfinite(rows)) or np.abs(B @ rows - original).max(initial=0.0) > 1e-9 * scale:
        return False
    T[:-1] = rows
    T[-1] = cost - cost[basis] @ rows
    return True


class SimplexSolver:
    """
    Two-phase dense tableau simplex with Bland's rule.

    Args:
        pivot_tol: Smallest magnitude accepted as a pivot or a negative reduced cost
        feasibility_tol: Largest phase-1 objective, and largest row violation of
            the final point, still treated as feasible (both scaled by the
            largest right-hand side when it exceeds one)
        ratio_tol: Pivot elements below this are skipped by the ratio test when
            a larger one exists
        refactor_every: Pivots between tableau rebuilds
        max_iterations: Hard cap on pivots per solve
    """

    name = 'simplex'

    def __init__(
        self,
        pivot_tol: float = PIVOT_TOL,
        feasibility_tol: float = FEASIBILITY_TOL,
        ratio_tol: float = RATIO_PIVOT_TOL,
        refactor_every: int = 50,
        max_iterations: int = 200_000,
    ):
        self.pivot_tol = pivot_tol
        self.feasibility_tol = feasibility_tol
        self.ratio_tol = ratio_tol
        self.refactor_every = refactor_every
        self.max_iterations = max_iterations

    def _run(
        self,
        T: np.ndarray,
        basis: List[int],
        allowed: int,
        original: np.ndarray,
        cost: np.ndarray,
        ratio_tol: float,
    ) -> Tuple[bool, int]:
        """Pivot until optimal; returns (bounded, iterations)."""
        iterations = 0
        while True:
            pivcol = _pivot_col(T, allowed, self.pivot_tol)
            if pivcol is None:
                return True, iterations
            pivrow = _pivot_row(T, basis, pivcol, self.pivot_tol, ratio_tol)
            if pivrow is None:
                return False, iterations
            _apply_pivot(T, basis, pivrow, pivcol)
            iterations += 1
            if iterations >= self.max_iterations:
                raise SolverError(f"Simplex exceeded {self.max_iterations} iterations")
            if iterations % self.refactor_every == 0:
                _refactor(T, original, basis, cost)

    def solve(self, model: LpModel) -> LpResult:
        """
        Solve a model.

        A point that fails the final feasibility check is re-solved once with
        a pivot threshold a hundred times larger.

        Args:
            model: A well-formed LpModel

        Returns:
            LpResult with status, values in model order and objective in the model's sense

        Raises:
            SolverError: When the final point violates the model on both attempts
        """
        form = _StandardForm.from_model(model)
        result = self._solve(model, form, self.ratio_tol)
        if result is not None:
            return result
        logger.warning("simplex_retry", model=model.name, ratio_tol=self.ratio_tol * 100.0)
        result = self._solve(model, form, self.ratio_tol * 100.0)
        if result is not None:
            return result
        raise SolverError(f"Simplex lost primal feasibility on model '{model.name}'")

    def _solve(self, model: LpModel, form: _StandardForm, ratio_tol: float) -> Optional[LpResult]:
        """One two-phase solve; None when the final point fails its feasibility check."""
        A, b = form.A.copy(), form.b.copy()
        senses = list(form.senses)
        negative = b < 0.0
        A[negative] *= -1.0
        b[negative] *= -1.0
        for r in np.flatnonzero(negative):
            if senses[r] is ConstraintSense.LE:
                senses[r] = ConstraintSense.GE
            elif senses[r] is ConstraintSense.GE:
                senses[r] = ConstraintSense.LE

        rows, structural = A.shape
        slack_rows = [r for r in range(rows) if senses[r] is not ConstraintSense.EQ]
        artificial_rows = [r for r in range(rows) if senses[r] is not ConstraintSense.LE]
        n_slack, n_art = len(slack_rows), len(artificial_rows)
        art_start = structural + n_slack
        width = art_start + n_art

        T = np.zeros((rows + 1, width + 1))
        T[:rows, :structural] = A
        T[:rows, -1] = b
        basis = [0] * rows
        for k, r in enumerate(slack_rows):
            T[r, structural + k] = 1.0 if senses[r] is ConstraintSense.LE else -1.0
            if senses[r] is ConstraintSense.LE:
                basis[r] = structural + k
        for k, r in enumerate(artificial_rows):
            T[r, art_start + k] = 1.0
            basis[r] = art_start + k
        original = T[:rows].copy()

        iterations = 0
        if n_art:
            phase1 = np.zeros(width + 1)
            phase1[art_start:width] = 1.0
            T[-1, art_start:width] = 1.0
            for r in artificial_rows:
                T[-1] -= T[r]
            _, spent = self._run(T, basis, width, original, phase1, ratio_tol)
            iterations += spent
            _refactor(T, original, basis, phase1)
            if -T[-1, -1] > self.feasibility_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
                logger.debug("simplex_infeasible", model=model.name, phase1=float(-T[-1, -1]))
                return LpResult(LpStatus.INFEASIBLE, iterations=iterations, backend=self.name)

            keep = list(range(rows))
            for r in range(rows):
                if basis[r] < art_start:
                    continue
                magnitudes = np.abs(T[r, :art_start])
                if magnitudes.size and magnitudes.max() > self.pivot_tol:
                    _apply_pivot(T, basis, r, int(np.argmax(magnitudes)))
                    iterations += 1
                else:
                    keep.remove(r)
            columns = list(range(art_start)) + [width]
            T = np.vstack((T[keep][:, columns], np.zeros((1, art_start + 1))))
            original = original[keep][:, columns]
            basis = [basis[r] for r in keep]

        cost = np.zeros(T.shape[1])
        cost[:structural] = form.c
        if not _refactor(T, original, basis, cost):
            T[-1] = cost
            for r, column in enumerate(basis):
                if cost[column] != 0.0:
                    T[-1] -= cost[column] * T[r]

        bounded, spent = self._run(T, basis, art_start, original, cost, ratio_tol)
        iterations += spent
        if not bounded:
            return LpResult(LpStatus.UNBOUNDED, iterations=iterations, backend=self.name)
        _refactor(T, original, basis, cost)

        y = np.zeros(art_start)
        for r, column in enumerate(basis):
            y[column] = max(T[r, -1], 0.0)
        values = form.recover(y)
        lower = np.array([v.lower for v in model.variables])
        upper = np.array([v.upper for v in model.variables])
        values = np.clip(values, lower, upper) if values.size else values

        scale = max(1.0, float(np.abs(model.rhs()).max(initial=0.0)))
        report = check_feasible(model, values, self.feasibility_tol * scale)
        if not report.ok:
            logger.warning(
                "simplex_infeasible_point",
                model=model.name,
                constraint=report.constraint,
                violation=report.worst_violation,
                iterations=iterations,
            )
            return None
        objective = model.evaluate_objective(values)
        logger.debug("simplex_optimal", model=model.name, iterations=iterations, objective=objective)
        return LpResult(LpStatus.OPTIMAL, values, objective, iterations, backend=self.name)
