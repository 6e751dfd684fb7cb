"""
Row generation over blocks of epigraph rows.

Relaxation models carry one epigraph row per (player, grid level). Solving the
whole model at once is wasteful: only a handful of rows per player bind at the
optimum. Rows are therefore activated lazily. Each round solves the model
restricted to the active rows, scans every row at the restricted optimum and
activates, per block, the most violated inactive row. When no row is violated beyond
the tolerance the restricted optimum is an optimum of the full model.
"""

from collections import defaultdict
from dataclasses import replace
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
import structlog

from .backends import LpBackend
from .model import LpModel, LpResult
from .simplex import SimplexSolver
from ..config import FEASIBILITY_TOL
from ..errors import SolverError

logger = structlog.get_logger(__name__)


def solve_with_row_generation(
    model: LpModel,
    seed_rows: Iterable[int],
    backend: Optional[LpBackend] = None,
    tol: float = FEASIBILITY_TOL,
    max_rounds: int = 500,
) -> LpResult:
    """
    Solve `model` by lazily activating rows.

    Rows without a block label are always active.

    Args:
        model: Full model
        seed_rows: Initial active rows; must keep the restricted model bounded
        backend: LP backend (built-in simplex by default)
        tol: Largest violation tolerated in the final point
        max_rounds: Guard on the number of restricted solves

    Returns:
        LpResult for the full model; `rounds` counts restricted solves

    Raises:
        SolverError: When an active row stays violated, or rounds run out
    """
    solver = backend or SimplexSolver()
    active = set(seed_rows)
    active.update(r for r, c in enumerate(model.constraints) if c.block is None)

    blocks: Dict[str, list] = defaultdict(list)
    for r, constraint in enumerate(model.constraints):
        if constraint.block is not None:
            blocks[constraint.block].append(r)

    iterations = 0
    for round_number in range(1, max_rounds + 1):
        result = solver.solve(model.restricted(active))
        iterations += result.iterations
        if not result.is_optimal:
            return replace(result, iterations=iterations, rounds=round_number)

        violations = model.row_violations(result.values)
        added = 0
        for block in sorted(blocks):
            rows = [r for r in blocks[block] if r not in active]
            if not rows:
                continue
            scores = violations[rows]
            worst = int(np.argmax(scores))
            if scores[worst] > tol:
                active.add(rows[worst])
                added += 1
        logger.debug(
            "row_generation_round",
            model=model.name,
            round=round_number,
            active=len(active),
            added=added,
            max_violation=float(violations.max(initial=0.0)),
        )
        if not added:
            held = violations[sorted(active)].max(initial=0.0)
            if held > FEASIBILITY_TOL * max(1.0, float(np.abs(model.rhs()).max(initial=0.0))):
                raise SolverError(
                    f"Restricted optimum of '{model.name}' violates an active row by {held:.3g}"
                )
            return replace(result, iterations=iterations, rounds=round_number)

    raise SolverError(f"Row generation did not converge within {max_rounds} rounds")
