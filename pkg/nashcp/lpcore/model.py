"""
Linear Program Model

This module implements a small builder for linear programs:
1. Named variables with lower/upper bounds and objective coefficients
2. Named sparse constraints (<=, >=, =), optionally tagged with a block label
3. Dense matrix views used by the solvers and by feasibility checks

Models are append-only; a restricted copy over a subset of rows is available
for row generation.
"""

import enum
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import LpModelError


class ObjectiveSense(enum.Enum):
    MINIMIZE = 'min'
    MAXIMIZE = 'max'


class ConstraintSense(enum.Enum):
    LE = '<='
    GE = '>='
    EQ = '='


class LpStatus(enum.Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LpVariable:
    name: str
    lower: float = 0.0
    upper: float = math.inf


@dataclass(frozen=True)
class LpConstraint:
    """A sparse row Σ coef·x (sense) rhs; `block` groups rows for row generation."""
    name: str
    coefficients: Tuple[Tuple[int, float], ...]
    sense: ConstraintSense
    rhs: float
    block: Optional[str] = None


@dataclass(frozen=True, eq=False)
class LpResult:
    """
    Outcome of solving an LpModel.

    Attributes:
        status: Optimal, infeasible or unbounded
        values: Variable values in model order (optimal only)
        objective: Objective value in the model's own sense (optimal only)
        iterations: Simplex pivots (or backend iterations) spent
        rounds: Row-generation rounds; 1 for a direct solve
        backend: Name of the backend that produced the result
    """
    status: LpStatus
    values: Optional[np.ndarray] = None
    objective: Optional[float] = None
    iterations: int = 0
    rounds: int = 1
    backend: str = 'simplex'

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


Coefficients = Union[Mapping[int, float], Iterable[Tuple[int, float]]]


class LpModel:
    """
    A linear program under construction.

    Args:
        name: Model name used in dumps
        sense: Objective sense
    """

    def __init__(self, name: str = 'lp', sense: ObjectiveSense = ObjectiveSense.MAXIMIZE):
        self.name = name
        self.sense = sense
        self._variables: List[LpVariable] = []
        self._objective: List[float] = []
        self._constraints: List[LpConstraint] = []
        self._variable_names: Dict[str, int] = {}
        self._constraint_names: Dict[str, int] = {}
        self._matrix: Optional[np.ndarray] = None

    @property
    def variables(self) -> Sequence[LpVariable]:
        return tuple(self._variables)

    @property
    def constraints(self) -> Sequence[LpConstraint]:
        return tuple(self._constraints)

    @property
    def num_variables(self) -> int:
        return len(self._variables)

    @property
    def num_constraints(self) -> int:
        return len(self._constraints)

    @property
    def objective(self) -> np.ndarray:
        return np.array(self._objective, dtype=float)

    def variable_index(self, name: str) -> int:
        return self._variable_names[name]

    def constraint_index(self, name: str) -> int:
        return self._constraint_names[name]

    def add_variable(
        self,
        name: str,
        lower: float = 0.0,
        upper: float = math.inf,
        objective: float = 0.0,
    ) -> int:
        """
        Add a variable and return its index.

        Raises:
            LpModelError: On duplicate names, NaN bounds, lower > upper or a non-finite objective
        """
        if name in self._variable_names:
            raise LpModelError(f"Duplicate variable name '{name}'")
        if math.isnan(lower) or math.isnan(upper) or lower > upper:
            raise LpModelError(f"Inconsistent bounds for '{name}': [{lower}, {upper}]")
        if lower == math.inf or upper == -math.inf:
            raise LpModelError(f"Empty bound range for '{name}'")
        if not math.isfinite(objective):
            raise LpModelError(f"Objective coefficient of '{name}' must be finite")
        index = len(self._variables)
        self._variables.append(LpVariable(name, float(lower), float(upper)))
        self._objective.append(float(objective))
        self._variable_names[name] = index
        self._matrix = None
        return index

    def set_objective(self, index: int, coefficient: float) -> None:
        if not math.isfinite(coefficient):
            raise LpModelError("Objective coefficients must be finite")
        self._objective[index] = float(coefficient)

    def add_constraint(
        self,
        name: str,
        coefficients: Coefficients,
        sense: ConstraintSense,
        rhs: float,
        block: Optional[str] = None,
    ) -> int:
        """
        Add a sparse constraint and return its index.

        Repeated variable indices are summed.

        Raises:
            LpModelError: On duplicate names, unknown variables or non-finite numbers
        """
        if name in self._constraint_names:
            raise LpModelError(f"Duplicate constraint name '{name}'")
        if not math.isfinite(rhs):
            raise LpModelError(f"Right-hand side of '{name}' must be finite")
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        merged: Dict[int, float] = {}
        for index, value in items:
            if not 0 <= index < len(self._variables):
                raise LpModelError(f"Constraint '{name}' references unknown variable {index}")
            if not math.isfinite(value):
                raise LpModelError(f"Constraint '{name}' has a non-finite coefficient")
            merged[index] = merged.get(index, 0.0) + float(value)
        row = tuple(sorted((i, v) for i, v in merged.items() if v != 0.0))
        position = len(self._constraints)
        self._constraints.append(LpConstraint(name, row, sense, float(rhs), block))
        self._constraint_names[name] = position
        self._matrix = None
        return position

    def matrix(self) -> np.ndarray:
        """Dense constraint matrix, rows in model order."""
        if self._matrix is None:
            dense = np.zeros((len(self._constraints), len(self._variables)))
            for r, constraint in enumerate(self._constraints):
                for index, value in constraint.coefficients:
                    dense[r, index] = value
            self._matrix = dense
        return self._matrix

    def rhs(self) -> np.ndarray:
        return np.array([c.rhs for c in self._constraints], dtype=float)

    def row_violations(self, point: np.ndarray) -> np.ndarray:
        """Nonnegative violation of every constraint at `point`."""
        if not self._constraints:
            return np.zeros(0)
        gap = self.matrix() @ np.asarray(point, dtype=float) - self.rhs()
        senses = np.array([c.sense.value for c in self._constraints])
        return np.where(
            senses == ConstraintSense.LE.value,
            np.maximum(gap, 0.0),
            np.where(senses == ConstraintSense.GE.value, np.maximum(-gap, 0.0), np.abs(gap)),
        )

    def evaluate_objective(self, point: np.ndarray) -> float:
        return float(np.dot(self.objective, np.asarray(point, dtype=float)))

    def restricted(self, rows: Iterable[int]) -> 'LpModel':
        """Copy with the same variables and only the given rows, kept in model order."""
        copy = LpModel(self.name, self.sense)
        copy._variables = list(self._variables)
        copy._objective = list(self._objective)
        copy._variable_names = dict(self._variable_names)
        for r in sorted(set(rows)):
            constraint = self._constraints[r]
            copy._constraint_names[constraint.name] = len(copy._constraints)
            copy._constraints.append(constraint)
        return copy
