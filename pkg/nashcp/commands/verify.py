"""
Verification Suites

This module runs the property sweeps behind the verify command:
1. nsw: rounding guarantee, expectation bound, marginal preservation, LP value
   recomputation and relaxation dominance over brute force
2. fsr: f-SR construction feasibility and value, CP/f-SR gap band and the
   integrality-gap families, with the worst ratio per agent count
3. ef1: every EF1 allocation of small identical instances against the
   water-fill certificates, for goods and for identical-machine scheduling
4. sched: α-bounded expected cost and relaxation dominance for Σ load² and
   completion time
5. alpha: the approximation constants

Each property is summarized by its worst case; every failing evaluation is
listed in the report.
"""

import enum
import math
import time
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
import structlog

from .generate import WeightScheme, generate_identical, generate_nsw, generate_sched
from .instance_files import load_nsw_instance, load_sched_instance
from .reports import RatioCheck, VerifyReport
from .solve import CHECK_SLACK, SCHED_SLACK, nsw_checks, sched_factor
from ..alpha import COMPLETION_ALPHA, completion_alpha, compute_alpha_power
from ..config import get_settings
from ..ef1 import EF1_GAP, IdenticalInstance, gap_bound, load_gap_bound
from ..errors import SizeGuardError
from ..fisher import (
    construct_from_x,
    equivalence_from_solution,
    fsr_objective,
    integrality_gap_family,
    shared_items_family,
)
from ..lpcore import LpBackend
from ..model import NswInstance, SchedInstance, SchedObjective, random_feasible_assignment, sched_cost
from ..oracle import (
    brute_identical_opt,
    brute_identical_sched_opt,
    brute_nsw_opt,
    brute_sched_opt,
    enumerate_ef1,
)
from ..relax import concave_value_nsw, relaxation_value_nsw, solve_cp_nsw, solve_cp_sched
from ..rounding import best_allocation, decompose, partition_groups

logger = structlog.get_logger(__name__)

MARGINAL_TOL = 1e-6
RECOMPUTE_TOL = 1e-6
RANDOM_POINTS = 5
SHARED_GAP_AGENTS = (3, 5, 8)
SHARED_GAP_VALUE = 50.0
SHARED_GAP_PRIVATE = 4


class Suite(str, enum.Enum):
    NSW = 'nsw'
    FSR = 'fsr'
    EF1 = 'ef1'
    SCHED = 'sched'
    ALPHA = 'alpha'


class _Tally:
    """Worst case per property plus a line for every failure."""

    def __init__(self):
        self.worst: Dict[str, RatioCheck] = {}
        self.counts: Dict[str, int] = {}
        self.failures: List[str] = []

    def record(self, check: RatioCheck, label: str) -> None:
        self.counts[check.name] = self.counts.get(check.name, 0) + 1
        current = self.worst.get(check.name)
        if current is None or check.slack < current.slack:
            self.worst[check.name] = check
        if not check.passed:
            self.failures.append(
                f"{label}: {check.name} {check.value:.9g} {check.relation} {check.bound:.9g}"
            )

    def checks(self) -> List[RatioCheck]:
        return [c.model_copy(update={'evaluations': self.counts[name]}) for name, c in self.worst.items()]


def _sweep_seeds(seed: int, count: int) -> List[int]:
    rng = np.random.default_rng(seed)
    return [int(s) for s in rng.integers(0, 2**31 - 1, size=count)]


def _nsw_sweep(input_path: Optional[Path], count: int, seed: int, weights: WeightScheme) -> List[NswInstance]:
    if input_path is not None:
        return [load_nsw_instance(input_path)]
    instances = []
    for s in _sweep_seeds(seed, count):
        rng = np.random.default_rng(s)
        n = int(rng.integers(1, 5))
        m = int(rng.integers(n, 9))
        instances.append(generate_nsw(n, m, s, weights))
    return instances


def _max_marginal_error(decomposition, x) -> float:
    marginals = decomposition.marginals()
    keys = set(marginals) | set(x)
    return max((abs(marginals.get(k, 0.0) - x.get_mass(*k)) for k in keys), default=0.0)


def suite_nsw(instances: List[NswInstance], eps: float, backend: Optional[LpBackend], tally: _Tally) -> None:
    for t, instance in enumerate(instances):
        label = f"instance {t}"
        solution = solve_cp_nsw(instance, eps, backend)
        decomposition = decompose(partition_groups(solution.x, instance))
        outcome = best_allocation(decomposition, instance)
        for check in nsw_checks(
            solution.value,
            eps,
            outcome.value,
            outcome.expected_value,
            concave_value_nsw(instance, solution.x),
        ):
            tally.record(check, label)
        tally.record(
            RatioCheck.at_most('marginal_error', _max_marginal_error(decomposition, solution.x), MARGINAL_TOL),
            label,
        )
        recomputed = relaxation_value_nsw(instance, solution.x, eps)
        tally.record(
            RatioCheck.at_most('lp_value_recompute_error', abs(recomputed - solution.value), RECOMPUTE_TOL),
            label,
        )
        try:
            optimum, _ = brute_nsw_opt(instance)
        except SizeGuardError:
            continue
        tally.record(RatioCheck.at_least('exp_cp_vs_brute_opt', math.exp(solution.value), optimum - 1e-6), label)


def suite_fsr(
    instances: List[NswInstance],
    eps: float,
    backend: Optional[LpBackend],
    seed: int,
    tally: _Tally,
    sweep_gap_families: bool,
) -> Dict[str, float]:
    rng = np.random.default_rng(seed)
    for t, instance in enumerate(instances):
        label = f"instance {t}"
        solution = solve_cp_nsw(instance, eps, backend)
        report = equivalence_from_solution(instance, solution)
        tally.record(RatioCheck.at_most('fsr_gap_abs', abs(report.gap), report.band), label)
        for point in range(RANDOM_POINTS):
            x = random_feasible_assignment(instance, solution.x, rng)
            fsr = construct_from_x(instance, x)
            tally.record(
                RatioCheck.at_most('construct_violations', float(len(fsr.violations(instance))), 0.0),
                f"{label} point {point}",
            )
            tally.record(
                RatioCheck.at_least('fsr_vs_mean_f', fsr_objective(instance, fsr), concave_value_nsw(instance, x) - 1e-6),
                f"{label} point {point}",
            )

    extra: Dict[str, float] = {}
    if sweep_gap_families:
        by_n: Dict[int, float] = {}
        for n, instance, label in _gap_instances():
            solution = solve_cp_nsw(instance, eps, backend)
            optimum, _ = brute_nsw_opt(instance)
            ratio = math.exp(solution.value) / optimum
            by_n[n] = max(by_n.get(n, 0.0), ratio)
            tally.record(RatioCheck.at_most('integrality_gap_ratio', ratio, EF1_GAP * (1.0 + eps) + 1e-9), label)
        extra['max_integrality_gap_ratio'] = max(by_n.values())
        extra.update({f"max_integrality_gap_ratio_n{n}": ratio for n, ratio in sorted(by_n.items())})
    return extra


def _gap_instances() -> Iterator[Tuple[int, NswInstance, str]]:
    for n in (2, 3, 4):
        for big in (2.0, 4.0, 8.0):
            for small in (n - 1, 2 * n - 1):
                yield n, integrality_gap_family(n, big, small), f"gap family n={n} big={big:g} small={small}"
    for n in SHARED_GAP_AGENTS:
        shared = max(1, round(n * (1.0 - 1.0 / math.e)))
        instance = shared_items_family(n, shared, SHARED_GAP_VALUE, SHARED_GAP_PRIVATE)
        yield n, instance, f"shared family n={n} shared={shared}"


def _identical_sweep(input_path: Optional[Path], count: int, seed: int) -> List[IdenticalInstance]:
    if input_path is not None:
        return [IdenticalInstance.from_nsw_instance(load_nsw_instance(input_path))]
    instances = []
    for s in _sweep_seeds(seed, count):
        rng = np.random.default_rng(s)
        instances.append(generate_identical(int(rng.integers(1, 4)), int(rng.integers(1, 8)), s))
    return instances


def suite_ef1(instances: List[IdenticalInstance], tally: _Tally) -> Dict[str, float]:
    shrink = math.exp(-1.0 / math.e)
    alpha_two = compute_alpha_power(2.0).alpha
    worst_ratio = 1.0
    for t, instance in enumerate(instances):
        optimum, _ = brute_identical_opt(instance)
        load_opt, _ = brute_identical_sched_opt(instance)
        completion_opt, _ = brute_identical_sched_opt(instance, completion=True)
        machines = SchedInstance(instance.agents, instance.items, np.tile(instance.values, (instance.n, 1)))
        completion_machines = machines.with_objective(SchedObjective.completion())
        for a, allocation in enumerate(enumerate_ef1(instance)):
            label = f"instance {t} allocation {a}"
            certificate = gap_bound(instance, allocation)
            if not certificate.degenerate:
                worst_ratio = max(worst_ratio, certificate.ratio)
                tally.record(
                    RatioCheck.at_least('ef1_nsw_vs_gap_bound', certificate.nsw, shrink * certificate.bound - CHECK_SLACK),
                    label,
                )
                tally.record(
                    RatioCheck.at_least('gap_bound_vs_opt', certificate.bound, optimum - CHECK_SLACK * max(1.0, optimum)),
                    label,
                )

            for name, cert, opt, real, factor in (
                ('load', load_gap_bound(instance, allocation, alpha=alpha_two), load_opt,
                 sched_cost(machines, allocation), alpha_two),
                ('completion', load_gap_bound(instance, allocation, completion=True), completion_opt,
                 sched_cost(completion_machines, allocation), COMPLETION_ALPHA),
            ):
                slack = CHECK_SLACK * max(1.0, opt)
                tally.record(RatioCheck.at_most(f'{name}_cost_vs_alpha_lower', cert.cost, cert.alpha * cert.lower + slack), label)
                tally.record(RatioCheck.at_most(f'{name}_lower_vs_opt', cert.lower, opt + slack), label)
                tally.record(RatioCheck.at_most(f'{name}_cost_vs_alpha_opt', real, factor * opt + slack), label)
    return {'max_ef1_ratio': worst_ratio}


def _sched_sweep(input_path: Optional[Path], count: int, seed: int) -> List[SchedInstance]:
    if input_path is not None:
        instance = load_sched_instance(input_path)
        return [instance.with_objective(SchedObjective.power_load(2.0)), instance.with_objective(SchedObjective.completion())]
    instances = []
    for s in _sweep_seeds(seed, count):
        rng = np.random.default_rng(s)
        base = generate_sched(int(rng.integers(1, 7)), int(rng.integers(1, 4)), s)
        instances += [base, base.with_objective(SchedObjective.completion())]
    return instances


def suite_sched(instances: List[SchedInstance], eps: float, backend: Optional[LpBackend], tally: _Tally) -> None:
    for t, instance in enumerate(instances):
        label = f"instance {t} ({instance.objective.label})"
        solution = solve_cp_sched(instance, eps, backend)
        decomposition = decompose(partition_groups(solution.x, instance))
        outcome = best_allocation(decomposition, instance)
        tally.record(
            RatioCheck.at_most(
                f'expected_cost_vs_alpha_cp[{instance.objective.label}]',
                outcome.expected_value,
                sched_factor(instance, eps) * solution.value + SCHED_SLACK,
            ),
            label,
        )
        tally.record(
            RatioCheck.at_most('marginal_error', _max_marginal_error(decomposition, solution.x), MARGINAL_TOL),
            label,
        )
        try:
            optimum, _ = brute_sched_opt(instance)
        except SizeGuardError:
            continue
        tally.record(
            RatioCheck.at_most(f'cp_vs_brute_opt[{instance.objective.label}]', solution.value, optimum + 1e-6),
            label,
        )


def suite_alpha(tally: _Tally) -> Dict[str, float]:
    alpha_one = compute_alpha_power(1.0).alpha
    alpha_two = compute_alpha_power(2.0).alpha
    tally.record(RatioCheck.at_most('alpha_1_error', abs(alpha_one - 1.0), 1e-6), 'k=1')
    tally.record(RatioCheck.at_most('alpha_2_error', abs(alpha_two - 4.0 / 3.0), 1e-4), 'k=2')

    certificate = completion_alpha()
    tally.record(RatioCheck.at_most('completion_constant_error', abs(certificate.alpha - 1.2071068), 1e-7), 'completion')
    tally.record(RatioCheck.at_most('completion_edge_b0_max', certificate.edge_b0_max, 1e-9), 'completion')
    tally.record(RatioCheck.at_most('completion_edge_diagonal_max', certificate.edge_diagonal_max, 1e-9), 'completion')
    tally.record(RatioCheck.at_most('completion_triangle_max', certificate.triangle_max, 1e-9), 'completion')

    exponents = (1.0, 1.5, 2.0, 3.0, 4.0)
    values = [compute_alpha_power(k).alpha for k in exponents]
    for (k0, a0), (k1, a1) in zip(zip(exponents, values), zip(exponents[1:], values[1:])):
        tally.record(RatioCheck.at_least('alpha_monotone', a1, a0 - 1e-9), f"k={k0:g}->{k1:g}")

    coarse = compute_alpha_power(3.0, 256).alpha
    fine = compute_alpha_power(3.0, 512).alpha
    tally.record(RatioCheck.at_most('alpha_3_grid_stability', abs(coarse - fine), 1e-4), 'k=3')
    return {f"alpha_{k:g}": v for k, v in zip(exponents, values)}


def run_verify(
    suite: Suite,
    input_path: Optional[Path] = None,
    count: int = 20,
    eps: Optional[float] = None,
    seed: int = 0,
    backend: Optional[LpBackend] = None,
) -> VerifyReport:
    """
    Run one verification suite.

    Args:
        suite: Suite to run
        input_path: Instance file; the suite sweeps generated instances when omitted
        count: Number of generated instances
        eps: Grid precision for solving suites
        seed: Seed of the generated sweep
        backend: LP backend

    Returns:
        VerifyReport; passed iff every evaluated property holds
    """
    eps = eps if eps is not None else get_settings().eps
    tally = _Tally()
    start = time.perf_counter()
    extra: Dict[str, float] = {}
    instances = 0

    if suite is Suite.NSW:
        sweep = _nsw_sweep(input_path, count, seed, WeightScheme.DIRICHLET)
        instances = len(sweep)
        suite_nsw(sweep, eps, backend, tally)
    elif suite is Suite.FSR:
        fsr_sweep = _nsw_sweep(input_path, count, seed, WeightScheme.UNIFORM)
        instances = len(fsr_sweep)
        extra = suite_fsr(fsr_sweep, eps, backend, seed, tally, sweep_gap_families=input_path is None)
    elif suite is Suite.EF1:
        identical = _identical_sweep(input_path, count, seed)
        instances = len(identical)
        extra = suite_ef1(identical, tally)
    elif suite is Suite.SCHED:
        sched = _sched_sweep(input_path, count, seed)
        instances = len(sched)
        suite_sched(sched, eps, backend, tally)
    else:
        extra = suite_alpha(tally)

    report = VerifyReport(
        suite=suite.value,
        instances=instances,
        eps=eps,
        seed=seed,
        checks=tally.checks(),
        failures=tally.failures,
        extra=extra,
        timings={'total': time.perf_counter() - start},
    )
    logger.info("verify_done", suite=suite.value, passed=report.passed, failures=len(report.failures))
    return report
