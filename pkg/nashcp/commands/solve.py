"""
End-to-end solve pipelines behind the solve-nsw and solve-sched commands.

Each pipeline solves the discretized relaxation, rounds it through the group
decomposition and certifies the result against the applicable guarantee.
"""

import math
import time
from pathlib import Path
from typing import Dict, List, Optional

import structlog

from .reports import RatioCheck, SolveReport, instance_digest
from ..alpha import COMPLETION_ALPHA, compute_alpha_power
from ..fisher import equivalence_from_solution
from ..lpcore import LpBackend, write_mps
from ..model import NswInstance, ObjectiveKind, SchedInstance
from ..relax import build_completion_lp, build_nsw_lp, build_theta_lp, concave_value_nsw, solve_cp_nsw, solve_cp_sched
from ..rounding import RoundingMode, round_solution

logger = structlog.get_logger(__name__)

CHECK_SLACK = 1e-9
SCHED_SLACK = 1e-6


def _dump(model, path: Optional[Path]) -> None:
    if path is None:
        return
    with open(path, 'w', encoding='utf-8') as handle:
        write_mps(model, handle)
    logger.info("lp_dumped", path=str(path), rows=model.num_constraints, columns=model.num_variables)


def nsw_checks(
    cp_value: float,
    eps: float,
    best_value: float,
    expected: float,
    concave: float,
    mode: RoundingMode = RoundingMode.BEST,
) -> List[RatioCheck]:
    """Rounding guarantees for an NSW solve; a sampled allocation is only checked in expectation."""
    if mode is RoundingMode.SAMPLE:
        return [RatioCheck.at_least('expected_log_nsw_vs_f', expected, concave - 1.0 / math.e - CHECK_SLACK)]
    log_best = math.log(best_value) if best_value > 0.0 else -1e300
    return [
        RatioCheck.at_least(
            'best_nsw_vs_exp_cp',
            best_value,
            math.exp(-1.0 / math.e) * math.exp(cp_value) / (1.0 + eps) - CHECK_SLACK,
        ),
        RatioCheck.at_least('expected_log_nsw_vs_f', expected, concave - 1.0 / math.e - CHECK_SLACK),
        RatioCheck.at_least('log_best_vs_expected', log_best, expected - CHECK_SLACK),
    ]


def run_solve_nsw(
    instance: NswInstance,
    eps: float,
    seed: int,
    mode: RoundingMode = RoundingMode.BEST,
    backend: Optional[LpBackend] = None,
    dump_lp: Optional[Path] = None,
) -> SolveReport:
    """
    Solve CP(NSW), round it and certify the rounding guarantee.

    Raises:
        InfeasibleError: If no fractional assignment gives every agent mass 1
    """
    timings: Dict[str, float] = {}
    start = time.perf_counter()
    if dump_lp is not None:
        _dump(build_nsw_lp(instance, eps).model, dump_lp)
    solution = solve_cp_nsw(instance, eps, backend)
    timings['relax'] = time.perf_counter() - start

    start = time.perf_counter()
    outcome = round_solution(instance, solution, mode, seed)
    timings['round'] = time.perf_counter() - start

    checks = nsw_checks(
        solution.value,
        eps,
        outcome.value,
        outcome.expected_value,
        concave_value_nsw(instance, solution.x),
        mode,
    )
    fsr_gap = None
    if instance.is_unweighted():
        report = equivalence_from_solution(instance, solution)
        fsr_gap = report.gap
        checks.append(RatioCheck.at_most('fsr_gap_abs', abs(report.gap), report.band))

    return SolveReport(
        command='solve-nsw',
        instance_digest=instance_digest(instance),
        objective='nsw',
        eps=eps,
        seed=seed,
        rounding=mode.value,
        cp_value=solution.value,
        rounded_value=outcome.value,
        expected_value=outcome.expected_value,
        terms=outcome.terms,
        allocation=outcome.allocation.to_dict(),
        checks=checks,
        fsr_gap=fsr_gap,
        lp_iterations=solution.iterations,
        lp_rounds=solution.rounds,
        timings=timings,
    )


def sched_factor(instance: SchedInstance, eps: float) -> float:
    """α·(1+ε)^k for the instance's objective (k = 2 for completion time)."""
    objective = instance.objective
    if objective.kind is ObjectiveKind.COMPLETION:
        return COMPLETION_ALPHA * (1.0 + eps) ** 2
    return compute_alpha_power(objective.k).alpha * (1.0 + eps) ** objective.k


def sched_checks(
    instance: SchedInstance,
    cp_value: float,
    eps: float,
    best: float,
    expected: float,
    mode: RoundingMode = RoundingMode.BEST,
) -> List[RatioCheck]:
    checks = [
        RatioCheck.at_most('expected_cost_vs_alpha_cp', expected, sched_factor(instance, eps) * cp_value + SCHED_SLACK),
    ]
    if mode is RoundingMode.BEST:
        checks.append(RatioCheck.at_most('best_cost_vs_expected', best, expected + CHECK_SLACK * max(1.0, expected)))
    return checks


def run_solve_sched(
    instance: SchedInstance,
    eps: float,
    seed: int,
    mode: RoundingMode = RoundingMode.BEST,
    backend: Optional[LpBackend] = None,
    dump_lp: Optional[Path] = None,
) -> SolveReport:
    """Solve the scheduling relaxation for the instance objective, round it and certify the α bound."""
    timings: Dict[str, float] = {}
    start = time.perf_counter()
    if dump_lp is not None:
        if instance.objective.kind is ObjectiveKind.COMPLETION:
            _dump(build_completion_lp(instance, eps).model, dump_lp)
        else:
            _dump(build_theta_lp(instance, eps).model, dump_lp)
    solution = solve_cp_sched(instance, eps, backend)
    timings['relax'] = time.perf_counter() - start

    start = time.perf_counter()
    outcome = round_solution(instance, solution, mode, seed)
    timings['round'] = time.perf_counter() - start

    return SolveReport(
        command='solve-sched',
        instance_digest=instance_digest(instance),
        objective=instance.objective.label,
        eps=eps,
        seed=seed,
        rounding=mode.value,
        cp_value=solution.value,
        rounded_value=outcome.value,
        expected_value=outcome.expected_value,
        terms=outcome.terms,
        allocation=outcome.allocation.to_dict(),
        checks=sched_checks(instance, solution.value, eps, outcome.value, outcome.expected_value, mode),
        lp_iterations=solution.iterations,
        lp_rounds=solution.rounds,
        timings=timings,
    )
