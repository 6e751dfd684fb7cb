"""
Vertex-enumeration LP oracle for tiny bounded linear programs.

Every choice of n linearly independent tight rows (constraints or finite
variable bounds) gives a candidate vertex; the best feasible candidate is the
optimum when the feasible region is bounded and nonempty.
"""

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..config import FEASIBILITY_TOL, get_settings
from ..errors import SizeGuardError
from ..lpcore import LpModel, LpStatus, ObjectiveSense, check_feasible

MAX_VARIABLES = 8
CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class VertexResult:
    status: LpStatus
    objective: Optional[float] = None
    point: Optional[np.ndarray] = None
    candidates: int = 0


def _hyperplanes(model: LpModel) -> List[Tuple[np.ndarray, float]]:
    planes = [(row, b) for row, b in zip(model.matrix(), model.rhs())]
    n = model.num_variables
    for index, variable in enumerate(model.variables):
        for bound in (variable.lower, variable.upper):
            if math.isfinite(bound):
                unit = np.zeros(n)
                unit[index] = 1.0
                planes.append((unit, bound))
    return planes


def brute_lp_opt(model: LpModel, tol: float = FEASIBILITY_TOL) -> VertexResult:
    """
    Solve a bounded LP with at most eight variables by enumerating vertices.

    Args:
        model: The model; its feasible region is assumed bounded
        tol: Feasibility tolerance for candidate vertices

    Returns:
        VertexResult with status OPTIMAL or INFEASIBLE

    Raises:
        SizeGuardError: For more than eight variables or too many row subsets
    """
    n = model.num_variables
    if n > MAX_VARIABLES:
        raise SizeGuardError(f"Vertex enumeration supports at most {MAX_VARIABLES} variables, got {n}")
    planes = _hyperplanes(model)
    if math.comb(len(planes), n) > get_settings().max_enumeration:
        raise SizeGuardError(f"Vertex enumeration over {len(planes)} rows is too large")

    objective = model.objective
    sign = 1.0 if model.sense is ObjectiveSense.MAXIMIZE else -1.0
    best_value, best_point, tried = -math.inf, None, 0
    for subset in itertools.combinations(range(len(planes)), n):
        A = np.array([planes[r][0] for r in subset]).reshape(n, n)
        if n and np.linalg.cond(A) > CONDITION_LIMIT:
            continue
        b = np.array([planes[r][1] for r in subset])
        point = np.linalg.solve(A, b) if n else np.zeros(0)
        tried += 1
        if not check_feasible(model, point, tol).ok:
            continue
        value = sign * float(objective @ point)
        if value > best_value + 1e-12 * max(1.0, abs(best_value)) or best_point is None:
            best_value, best_point = value, point
    if best_point is None:
        return VertexResult(LpStatus.INFEASIBLE, candidates=tried)
    return VertexResult(LpStatus.OPTIMAL, sign * best_value, best_point, tried)
