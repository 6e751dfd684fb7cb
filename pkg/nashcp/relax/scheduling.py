"""
Scheduling relaxations.

CP(θ) for Σ_i θ(load_i) and the completion-time program for uniform Smith
ratios share one builder. Both minimize over x with Σ_i x_ij = 1 for every
job, using epigraph rows f̄_i − Σ_j c_j(h) x_ij >= d(h) for h in the
machine's scheduling grid, where (c(h), d(h)) are the coefficients of the
linearization g_i(·, h). The completion-time program uses θ(t) = t² and
adds the linear term ½ Σ_ij x_ij p_ij² to the objective ½ Σ_i f̄_i.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from .cleanup import clean_assignment
from .solution import FractionalSolution
from ..config import RESIDUAL_TOL, get_settings
from ..errors import InstanceError, SolverError
from ..lpcore import (
    ConstraintSense,
    LpBackend,
    LpModel,
    ObjectiveSense,
    solve_with_row_generation,
)
from ..model import FractionalAssignment, ObjectiveKind, SchedInstance, ensure_valid
from ..waterfill import (
    Grid,
    LevelConvention,
    ThetaSpec,
    ValueMassProfile,
    f_bar_theta,
    f_theta,
    power_theta,
    sched_grid,
    theta_cut,
    water_level,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SchedLp:
    """A scheduling relaxation LP with its variable and row maps."""
    model: LpModel
    x_index: Dict[Tuple[str, str], int]
    fbar_index: Dict[str, int]
    grids: Dict[str, Grid]
    epigraph_rows: Dict[str, List[int]]
    theta: ThetaSpec
    completion: bool


def machine_profile(instance: SchedInstance, x: FractionalAssignment, machine: str) -> ValueMassProfile:
    """Machine i's sizes over all jobs paired with its masses in x."""
    i = instance.machine_index[machine]
    return ValueMassProfile.sched(instance.p[i], [x.get_mass(machine, j) for j in instance.jobs])


def _theta_for(instance: SchedInstance, theta: Optional[ThetaSpec]) -> ThetaSpec:
    if theta is not None:
        return theta
    return power_theta(instance.objective.k)


def _build(
    instance: SchedInstance,
    eps: float,
    theta: ThetaSpec,
    completion: bool,
    max_grid_points: Optional[int],
) -> SchedLp:
    ensure_valid(instance)
    scale = 0.5 if completion else 1.0
    model = LpModel('cp_completion' if completion else 'cp_theta', ObjectiveSense.MINIMIZE)
    x_index: Dict[Tuple[str, str], int] = {}
    for i, machine in enumerate(instance.machines):
        for j, job in enumerate(instance.jobs):
            linear = scale * instance.p[i, j] ** 2 if completion else 0.0
            x_index[(machine, job)] = model.add_variable(f"x[{machine},{job}]", 0.0, 1.0, objective=linear)
    fbar_index = {
        machine: model.add_variable(f"fbar[{machine}]", float('-inf'), float('inf'), objective=scale)
        for machine in instance.machines
    }

    for job in instance.jobs:
        model.add_constraint(
            f"assign[{job}]",
            {x_index[(machine, job)]: 1.0 for machine in instance.machines},
            ConstraintSense.EQ,
            1.0,
        )

    grids: Dict[str, Grid] = {}
    epigraph_rows: Dict[str, List[int]] = {}
    for i, machine in enumerate(instance.machines):
        sizes = instance.p[i]
        grid = sched_grid(sizes, eps, max_grid_points)
        grids[machine] = grid
        rows = []
        for t, h in enumerate(grid.levels):
            c, d = theta_cut(sizes, float(h), theta)
            coefficients = {fbar_index[machine]: 1.0}
            for job, coefficient in zip(instance.jobs, c):
                coefficients[x_index[(machine, job)]] = -float(coefficient)
            rows.append(model.add_constraint(f"cut[{machine},{t}]", coefficients, ConstraintSense.GE, d, block=machine))
        epigraph_rows[machine] = rows
    return SchedLp(model, x_index, fbar_index, grids, epigraph_rows, theta, completion)


def build_theta_lp(
    instance: SchedInstance,
    eps: float,
    theta: Optional[ThetaSpec] = None,
    max_grid_points: Optional[int] = None,
) -> SchedLp:
    """
    Build CP(θ) for a PowerLoad instance (θ defaults to t^k).

    Raises:
        InstanceError: If the instance carries the completion-time objective
    """
    if instance.objective.kind is not ObjectiveKind.POWER_LOAD:
        raise InstanceError("CP(theta) needs a PowerLoad objective")
    return _build(instance, eps, _theta_for(instance, theta), False, max_grid_points)


def build_completion_lp(
    instance: SchedInstance,
    eps: float,
    max_grid_points: Optional[int] = None,
) -> SchedLp:
    """
    Build the completion-time program (θ = t² plus the linear Σ x p² term).

    Raises:
        InstanceError: If the instance carries a PowerLoad objective
    """
    if instance.objective.kind is not ObjectiveKind.COMPLETION:
        raise InstanceError("The completion-time program needs a CompletionUniformSmith objective")
    return _build(instance, eps, power_theta(2.0), True, max_grid_points)


def relaxation_value_sched(
    instance: SchedInstance,
    x: FractionalAssignment,
    eps: float,
    theta: Optional[ThetaSpec] = None,
) -> float:
    """Σ_i f̄_i(x_i), or ½(Σ f̄_i + Σ x p²) for completion time, via the water-fill functions."""
    completion = instance.objective.kind is ObjectiveKind.COMPLETION
    theta = power_theta(2.0) if completion else _theta_for(instance, theta)
    total = 0.0
    for i, machine in enumerate(instance.machines):
        profile = machine_profile(instance, x, machine)
        total += f_bar_theta(profile, sched_grid(instance.p[i], eps), theta)
        if completion:
            total += float(np.dot(profile.masses, instance.p[i] ** 2))
    return 0.5 * total if completion else total


def convex_value_sched(
    instance: SchedInstance,
    x: FractionalAssignment,
    theta: Optional[ThetaSpec] = None,
) -> float:
    """Exact convex objective Σ_i f_i(x_i) (completion: ½(Σ f_i + Σ x p²))."""
    completion = instance.objective.kind is ObjectiveKind.COMPLETION
    theta = power_theta(2.0) if completion else _theta_for(instance, theta)
    total = 0.0
    for i, machine in enumerate(instance.machines):
        profile = machine_profile(instance, x, machine)
        total += f_theta(profile, theta)
        if completion:
            total += float(np.dot(profile.masses, instance.p[i] ** 2))
    return 0.5 * total if completion else total


def _solve(lp: SchedLp, instance: SchedInstance, eps: float, backend: Optional[LpBackend]) -> FractionalSolution:
    seeds = [rows[0] for rows in lp.epigraph_rows.values()]
    result = solve_with_row_generation(lp.model, seeds, backend, tol=RESIDUAL_TOL)
    if not result.is_optimal:
        raise SolverError(f"Scheduling relaxation ended with status {result.status.value}")

    x = clean_assignment({key: result.values[i] for key, i in lp.x_index.items()})
    levels = {
        machine: water_level(machine_profile(instance, x, machine), LevelConvention.ZERO)
        for machine in instance.machines
    }
    kind = 'completion' if lp.completion else 'theta'
    logger.info(
        "cp_sched_solved",
        kind=kind,
        value=result.objective,
        eps=eps,
        iterations=result.iterations,
        rounds=result.rounds,
    )
    return FractionalSolution(
        kind=kind,
        x=x,
        value=float(result.objective),
        levels=levels,
        eps=eps,
        grid_sizes={m: len(g) for m, g in lp.grids.items()},
        iterations=result.iterations,
        rounds=result.rounds,
    )


def solve_cp_theta(
    instance: SchedInstance,
    eps: Optional[float] = None,
    theta: Optional[ThetaSpec] = None,
    backend: Optional[LpBackend] = None,
    max_grid_points: Optional[int] = None,
) -> FractionalSolution:
    """
    Solve CP(θ); always feasible.

    Returns:
        FractionalSolution with value Σ_i f̄_i
    """
    eps = eps if eps is not None else get_settings().eps
    lp = build_theta_lp(instance, eps, theta, max_grid_points)
    return _solve(lp, instance, eps, backend)


def solve_cp_completion(
    instance: SchedInstance,
    eps: Optional[float] = None,
    backend: Optional[LpBackend] = None,
    max_grid_points: Optional[int] = None,
) -> FractionalSolution:
    """
    Solve the completion-time program; always feasible.

    Returns:
        FractionalSolution with value ½(Σ_i f̄_i + Σ_ij x_ij p_ij²)
    """
    eps = eps if eps is not None else get_settings().eps
    lp = build_completion_lp(instance, eps, max_grid_points)
    return _solve(lp, instance, eps, backend)


def solve_cp_sched(
    instance: SchedInstance,
    eps: Optional[float] = None,
    backend: Optional[LpBackend] = None,
) -> FractionalSolution:
    """Dispatch on the instance objective."""
    if instance.objective.kind is ObjectiveKind.COMPLETION:
        return solve_cp_completion(instance, eps, backend)
    return solve_cp_theta(instance, eps, backend=backend)
