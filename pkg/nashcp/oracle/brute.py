"""
Exhaustive Solvers

This module enumerates every allocation of small instances to provide exact
ground truth:
1. brute_nsw_opt over Π_j |N_j| allocations restricted to edges
2. brute_sched_opt over machines^jobs assignments
3. enumerate_ef1 and the identical-agent optima used by the EF1 certificates

Allocations are enumerated lexicographically in instance item (job) order, in
vectorized chunks. Ties resolve to the lexicographically first optimum.
"""

import math
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..config import get_settings
from ..ef1 import EF1_TOL, IdenticalInstance
from ..errors import InstanceError, SizeGuardError
from ..model import Allocation, NswInstance, ObjectiveKind, SchedInstance, nsw_value
from ..waterfill import ThetaSpec, power_theta

logger = structlog.get_logger(__name__)

CHUNK = 1 << 16
EF1_ENUMERATION_LIMIT = 1_000_000
TIE_TOL = 1e-12


def _guard(shape: Sequence[int], limit: Optional[int], what: str) -> int:
    total = math.prod(shape)
    limit = limit if limit is not None else get_settings().max_enumeration
    if total > limit:
        raise SizeGuardError(f"{what} needs {total} allocations, above the limit of {limit}")
    return total


def _chunks(shape: Sequence[int]) -> Iterator[Tuple[int, Tuple[np.ndarray, ...]]]:
    """Yield (offset, per-position digit arrays) in C order."""
    total = math.prod(shape)
    for start in range(0, total, CHUNK):
        index = np.arange(start, min(start + CHUNK, total))
        yield start, np.unravel_index(index, tuple(shape))


def _scan(
    shape: Sequence[int],
    score: Callable[[Tuple[np.ndarray, ...]], np.ndarray],
    maximize: bool,
) -> Tuple[int, float]:
    """Flat index and score of the first optimum under `score`."""
    best_index, best = 0, -math.inf
    for start, digits in _chunks(shape):
        scores = score(digits) if maximize else -score(digits)
        top = float(scores.max())
        margin = 0.0 if math.isinf(best) else TIE_TOL * max(1.0, abs(best))
        if start == 0 or top > best + margin:
            slack = 0.0 if math.isinf(top) else TIE_TOL * max(1.0, abs(top))
            best_index, best = start + int(np.argmax(scores >= top - slack)), top
    return best_index, (best if maximize else -best)


def _digits_of(index: int, shape: Sequence[int]) -> Tuple[int, ...]:
    return tuple(int(d) for d in np.unravel_index(index, tuple(shape)))


def brute_nsw_opt(instance: NswInstance, limit: Optional[int] = None) -> Tuple[float, Allocation]:
    """
    Exact weighted NSW optimum by enumeration.

    Args:
        instance: NSW instance
        limit: Maximum number of allocations (settings when omitted)

    Returns:
        (optimal NSW value, lexicographically first optimal allocation)

    Raises:
        SizeGuardError: If Π_j |N_j| exceeds the limit
        InstanceError: If some item has no adjacent agent
    """
    candidates = [instance.item_agents[j] for j in instance.items]
    if any(not agents for agents in candidates):
        raise InstanceError("Every item needs at least one adjacent agent")
    shape = [len(agents) for agents in candidates]
    _guard(shape, limit, "brute_nsw_opt")

    position = {a: i for i, a in enumerate(instance.agent_ids)}
    owners = [np.array([position[a] for a in agents]) for agents in candidates]
    gains = [np.array([instance.values[(a, j)] for a in agents]) for j, agents in zip(instance.items, candidates)]
    weights = np.array([a.weight for a in instance.agents])

    def score(digits: Tuple[np.ndarray, ...]) -> np.ndarray:
        size = digits[0].size if digits else 1
        bundles = np.zeros((size, instance.n))
        rows = np.arange(size)
        for t, d in enumerate(digits):
            bundles[rows, owners[t][d]] += gains[t][d]
        with np.errstate(divide='ignore'):
            logs = np.where(bundles > 0.0, np.log(np.where(bundles > 0.0, bundles, 1.0)), -np.inf)
        weighted = np.where(weights > 0.0, logs * weights, 0.0)
        return weighted.sum(axis=1)

    if not shape:
        return nsw_value(instance, Allocation({})), Allocation({})
    index, _ = _scan(shape, score, maximize=True)
    choice = _digits_of(index, shape)
    allocation = Allocation({j: candidates[t][choice[t]] for t, j in enumerate(instance.items)})
    value = nsw_value(instance, allocation)
    logger.debug("brute_nsw_opt", allocations=math.prod(shape), value=value)
    return value, allocation


def _brute_loads(
    p: np.ndarray,
    cost: Callable[[np.ndarray, Tuple[np.ndarray, ...]], np.ndarray],
    limit: Optional[int],
    what: str,
) -> Tuple[float, Tuple[int, ...]]:
    machines, jobs = p.shape
    shape = [machines] * jobs
    _guard(shape, limit, what)
    if jobs == 0:
        empty: Tuple[np.ndarray, ...] = ()
        return float(cost(np.zeros((1, machines)), empty)[0]), ()

    def score(digits: Tuple[np.ndarray, ...]) -> np.ndarray:
        loads = np.zeros((digits[0].size, machines))
        rows = np.arange(digits[0].size)
        for j, d in enumerate(digits):
            loads[rows, d] += p[d, j]
        return cost(loads, digits)

    index, best = _scan(shape, score, maximize=False)
    return best, _digits_of(index, shape)


def _square_sizes(p: np.ndarray, digits: Tuple[np.ndarray, ...]) -> np.ndarray:
    total = np.zeros(digits[0].size) if digits else np.zeros(1)
    for j, d in enumerate(digits):
        total += p[d, j] ** 2
    return total


def brute_sched_opt(instance: SchedInstance, limit: Optional[int] = None) -> Tuple[float, Allocation]:
    """
    Exact scheduling optimum for the instance's objective by enumeration.

    Raises:
        SizeGuardError: If machines^jobs exceeds the limit
    """
    p = np.asarray(instance.p, dtype=float)
    if instance.objective.kind is ObjectiveKind.COMPLETION:
        def cost(loads, digits):
            return 0.5 * ((loads ** 2).sum(axis=1) + _square_sizes(p, digits))
    else:
        k = instance.objective.k

        def cost(loads, digits):
            return (loads ** k).sum(axis=1)

    best, choice = _brute_loads(p, cost, limit, "brute_sched_opt")
    allocation = Allocation({job: instance.machines[choice[j]] for j, job in enumerate(instance.jobs)})
    logger.debug("brute_sched_opt", objective=instance.objective.label, cost=best)
    return best, allocation


def enumerate_ef1(
    instance: IdenticalInstance,
    limit: int = EF1_ENUMERATION_LIMIT,
    tol: float = EF1_TOL,
) -> List[Allocation]:
    """
    All total allocations that are EF1, in lexicographic order.

    Raises:
        SizeGuardError: If n^m exceeds the limit
    """
    shape = [instance.n] * instance.m
    _guard(shape, limit, "enumerate_ef1")
    if not shape:
        return [Allocation({})]
    values = np.array(instance.values)
    found: List[Allocation] = []
    for _, digits in _chunks(shape):
        size = digits[0].size
        rows = np.arange(size)
        bundles = np.zeros((size, instance.n))
        largest = np.zeros((size, instance.n))
        for t, d in enumerate(digits):
            bundles[rows, d] += values[t]
            largest[rows, d] = np.maximum(largest[rows, d], values[t])
        # i = i' never violates, so comparing extremes covers every ordered pair
        ok = bundles.min(axis=1) >= (bundles - largest).max(axis=1) - tol
        for r in np.flatnonzero(ok):
            found.append(Allocation({
                instance.items[t]: instance.agents[int(d[r])] for t, d in enumerate(digits)
            }))
    return found


def brute_identical_opt(instance: IdenticalInstance, limit: Optional[int] = None) -> Tuple[float, Allocation]:
    """Unweighted NSW optimum of an identical-agent instance."""
    return brute_nsw_opt(instance.to_nsw_instance(), limit)


def brute_identical_sched_opt(
    instance: IdenticalInstance,
    theta: Optional[ThetaSpec] = None,
    completion: bool = False,
    limit: Optional[int] = None,
) -> Tuple[float, Allocation]:
    """
    Optimal identical-machine schedule, reading agents as machines and values as sizes.

    Args:
        instance: Identical machines and job sizes
        theta: Load cost for Σ θ(load); t² when omitted
        completion: Minimize ½(Σ load² + Σ p²) instead
        limit: Enumeration limit

    Returns:
        (optimal cost, lexicographically first optimal schedule)
    """
    p = np.tile(np.array(instance.values, dtype=float), (instance.n, 1))
    if completion:
        def cost(loads, digits):
            return 0.5 * ((loads ** 2).sum(axis=1) + _square_sizes(p, digits))
    else:
        spec = theta or power_theta(2.0)

        def cost(loads, digits):
            return spec(loads).sum(axis=1)

    best, choice = _brute_loads(p, cost, limit, "brute_identical_sched_opt")
    return best, Allocation({item: instance.agents[choice[t]] for t, item in enumerate(instance.items)})
