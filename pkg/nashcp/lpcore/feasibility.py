"""Point feasibility against an LpModel."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import LpModel
from ..config import FEASIBILITY_TOL
from ..errors import LpModelError


@dataclass(frozen=True)
class FeasibilityReport:
    """Worst violation over constraints and bounds; ok iff it is within tolerance."""
    ok: bool
    worst_violation: float
    constraint: Optional[str]


def check_feasible(model: LpModel, point, tol: float = FEASIBILITY_TOL) -> FeasibilityReport:
    """
    Check a point against every constraint and bound.

    Args:
        model: The model
        point: Values in model variable order
        tol: Violation tolerated before reporting failure

    Returns:
        FeasibilityReport naming the worst row ('bound:<var>' for bounds)
    """
    x = np.asarray(point, dtype=float)
    if x.shape != (model.num_variables,):
        raise LpModelError(f"Point has shape {x.shape}, expected ({model.num_variables},)")

    worst, where = 0.0, None
    violations = model.row_violations(x)
    if violations.size:
        r = int(np.argmax(violations))
        worst, where = float(violations[r]), model.constraints[r].name
    for var, value in zip(model.variables, x):
        excess = max(var.lower - value, value - var.upper, 0.0)
        if excess > worst:
            worst, where = float(excess), f"bound:{var.name}"
    if worst <= tol:
        return FeasibilityReport(True, worst, None)
    return FeasibilityReport(False, worst, where)
