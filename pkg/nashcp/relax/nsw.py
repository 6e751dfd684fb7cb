"""
CP(NSW) Relaxation

This module builds and solves the grid-discretized linear program for the
weighted Nash social welfare relaxation:

    max  Σ_i w_i f̄_i
    s.t. Σ_{i ∈ N_j} x_ij = 1        for every item j
         Σ_{j ∈ M_i} x_ij >= 1       for every agent i
         f̄_i − Σ_j c_j(h) x_ij <= d(h)   for every agent i and h ∈ H_i
         0 <= x_ij <= 1, f̄_i free

where (c(h), d(h)) are the coefficients of the NSW linearization g_i(·, h).
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import structlog

from .cleanup import clean_assignment
from .solution import FractionalSolution
from ..config import RESIDUAL_TOL, get_settings
from ..errors import InfeasibleError, SolverError
from ..lpcore import (
    ConstraintSense,
    LpBackend,
    LpModel,
    LpStatus,
    ObjectiveSense,
    solve_with_row_generation,
)
from ..model import FractionalAssignment, NswInstance, ensure_valid
from ..waterfill import (
    Grid,
    LevelConvention,
    ValueMassProfile,
    f_bar_nsw,
    f_nsw,
    nsw_cut,
    nsw_grid,
    water_level,
)

logger = structlog.get_logger(__name__)

INFEASIBLE_MESSAGE = "no fractional assignment gives every agent mass 1"


@dataclass(frozen=True, eq=False)
class NswLp:
    """The CP(NSW) linear program with its variable and row maps."""
    model: LpModel
    x_index: Dict[Tuple[str, str], int]
    fbar_index: Dict[str, int]
    grids: Dict[str, Grid]
    epigraph_rows: Dict[str, List[int]]


def agent_profile(instance: NswInstance, x: FractionalAssignment, agent: str) -> ValueMassProfile:
    """Agent i's values over M_i paired with its masses in x."""
    items = instance.agent_items[agent]
    return ValueMassProfile.nsw(
        instance.agent_values(agent),
        [x.get_mass(agent, j) for j in items],
    )


def build_nsw_lp(instance: NswInstance, eps: float, max_grid_points: Optional[int] = None) -> NswLp:
    """
    Build the discretized CP(NSW) linear program.

    Args:
        instance: A valid NSW instance
        eps: Grid precision ε > 0
        max_grid_points: Per-agent grid size guard

    Returns:
        NswLp holding the model and its index maps
    """
    ensure_valid(instance)
    model = LpModel('cp_nsw', ObjectiveSense.MAXIMIZE)
    x_index: Dict[Tuple[str, str], int] = {}
    for agent in instance.agent_ids:
        for item in instance.agent_items[agent]:
            x_index[(agent, item)] = model.add_variable(f"x[{agent},{item}]", 0.0, 1.0)
    fbar_index = {
        a.id: model.add_variable(f"fbar[{a.id}]", float('-inf'), float('inf'), objective=a.weight)
        for a in instance.agents
    }

    for item in instance.items:
        model.add_constraint(
            f"assign[{item}]",
            {x_index[(a, item)]: 1.0 for a in instance.item_agents[item]},
            ConstraintSense.EQ,
            1.0,
        )
    for agent in instance.agent_ids:
        model.add_constraint(
            f"mass[{agent}]",
            {x_index[(agent, j)]: 1.0 for j in instance.agent_items[agent]},
            ConstraintSense.GE,
            1.0,
        )

    grids: Dict[str, Grid] = {}
    epigraph_rows: Dict[str, List[int]] = {}
    for agent in instance.agent_ids:
        items = instance.agent_items[agent]
        values = instance.agent_values(agent)
        grid = nsw_grid(values, eps, max_grid_points)
        grids[agent] = grid
        rows = []
        for t, h in enumerate(grid.levels):
            c, d = nsw_cut(values, float(h))
            coefficients = {fbar_index[agent]: 1.0}
            for item, coefficient in zip(items, c):
                coefficients[x_index[(agent, item)]] = -float(coefficient)
            rows.append(model.add_constraint(f"cut[{agent},{t}]", coefficients, ConstraintSense.LE, d, block=agent))
        epigraph_rows[agent] = rows

    logger.debug(
        "nsw_lp_built",
        agents=instance.n,
        items=instance.m,
        grid_sizes={a: len(g) for a, g in grids.items()},
    )
    return NswLp(model, x_index, fbar_index, grids, epigraph_rows)


def relaxation_value_nsw(instance: NswInstance, x: FractionalAssignment, eps: float) -> float:
    """Σ_i w_i f̄_i(x_i) recomputed through the water-fill functions."""
    total = 0.0
    for agent in instance.agents:
        grid = nsw_grid(instance.agent_values(agent.id), eps)
        total += agent.weight * f_bar_nsw(agent_profile(instance, x, agent.id), grid)
    return total


def concave_value_nsw(instance: NswInstance, x: FractionalAssignment) -> float:
    """Σ_i w_i f_i(x_i), the exact CP(NSW) objective at x."""
    return sum(a.weight * f_nsw(agent_profile(instance, x, a.id)) for a in instance.agents)


def solve_cp_nsw(
    instance: NswInstance,
    eps: Optional[float] = None,
    backend: Optional[LpBackend] = None,
    max_grid_points: Optional[int] = None,
) -> FractionalSolution:
    """
    Solve the discretized CP(NSW).

    Args:
        instance: A valid NSW instance
        eps: Grid precision (configured default when omitted)
        backend: LP backend (built-in simplex by default)
        max_grid_points: Per-agent grid size guard

    Returns:
        FractionalSolution with value Σ w_i f̄_i

    Raises:
        InfeasibleError: When no fractional assignment gives every agent mass 1
    """
    eps = eps if eps is not None else get_settings().eps
    lp = build_nsw_lp(instance, eps, max_grid_points)
    seeds = [rows[-1] for rows in lp.epigraph_rows.values()]
    result = solve_with_row_generation(lp.model, seeds, backend, tol=RESIDUAL_TOL)
    if result.status is LpStatus.INFEASIBLE:
        raise InfeasibleError(INFEASIBLE_MESSAGE)
    if not result.is_optimal:
        raise SolverError(f"CP(NSW) solve ended with status {result.status.value}")

    x = clean_assignment({key: result.values[i] for key, i in lp.x_index.items()})
    levels = {
        a: water_level(agent_profile(instance, x, a), LevelConvention.MIN_SUPPORT_VALUE)
        for a in instance.agent_ids
    }
    logger.info(
        "cp_nsw_solved",
        value=result.objective,
        eps=eps,
        iterations=result.iterations,
        rounds=result.rounds,
    )
    return FractionalSolution(
        kind='nsw',
        x=x,
        value=float(result.objective),
        levels=levels,
        eps=eps,
        grid_sizes={a: len(g) for a, g in lp.grids.items()},
        iterations=result.iterations,
        rounds=result.rounds,
    )
