"""
Picking an allocation from a matching decomposition.

Sampling draws term k with probability λ_k from a seeded generator. The
derandomized choice scans every term, keeps the best one (ties to the lowest
term index) and reports the exact λ-weighted expectation of the analysis form
of the objective: Σ w_i ln v_i for NSW, the cost itself for scheduling.
"""

import enum
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

import numpy as np
import structlog

from .decomposition import MatchingDecomposition, decompose
from .groups import partition_groups
from ..errors import InvariantError
from ..model import Allocation, NswInstance, SchedInstance, log_nsw, nsw_value, sched_cost
from ..relax import FractionalSolution

logger = structlog.get_logger(__name__)

Instance = Union[NswInstance, SchedInstance]


class RoundingMode(enum.Enum):
    BEST = 'best'
    SAMPLE = 'sample'


@dataclass(frozen=True)
class RoundingOutcome:
    """
    A rounded allocation together with the decomposition statistics.

    Attributes:
        allocation: The chosen integral allocation
        value: NSW value (product form) or scheduling cost of the allocation
        expected_value: λ-weighted Σ w_i ln v_i (NSW) or expected cost (scheduling)
        term_index: Index of the chosen term in the decomposition
        terms: Number of decomposition terms
    """
    allocation: Allocation
    value: float
    expected_value: float
    term_index: int
    terms: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'allocation': self.allocation.to_dict(),
            'value': self.value,
            'expected_value': self.expected_value,
            'term_index': self.term_index,
            'terms': self.terms,
        }


def sample_index(decomposition: MatchingDecomposition, seed: int) -> int:
    rng = np.random.default_rng(seed)
    return int(rng.choice(len(decomposition), p=decomposition.weights))


def sample(decomposition: MatchingDecomposition, seed: int) -> Allocation:
    """Draw allocation_k with probability λ_k; deterministic for a fixed seed."""
    return decomposition.terms[sample_index(decomposition, seed)].allocation


def _term_scores(decomposition: MatchingDecomposition, instance: Instance):
    if isinstance(instance, NswInstance):
        values = [nsw_value(instance, t.allocation) for t in decomposition.terms]
        analysis = [log_nsw(instance, t.allocation) for t in decomposition.terms]
        if any(math.isinf(a) for a in analysis):
            raise InvariantError("A decomposition term leaves a weighted agent without items")
        return values, analysis
    costs = [sched_cost(instance, t.allocation) for t in decomposition.terms]
    return costs, costs


def expected_value(decomposition: MatchingDecomposition, instance: Instance) -> float:
    """Exact λ-weighted expectation of the objective's analysis form."""
    _, analysis = _term_scores(decomposition, instance)
    return float(np.dot(decomposition.weights, analysis))


def best_allocation(decomposition: MatchingDecomposition, instance: Instance) -> RoundingOutcome:
    """
    Pick the best term of a decomposition.

    Args:
        decomposition: Output of decompose
        instance: NSW instance (maximize nsw_value) or scheduling instance (minimize sched_cost)

    Returns:
        RoundingOutcome for the best term

    Raises:
        InvariantError: If an NSW term leaves a positive-weight agent empty
    """
    values, analysis = _term_scores(decomposition, instance)
    maximize = isinstance(instance, NswInstance)
    best = 0
    for k, value in enumerate(values):
        if (value > values[best]) if maximize else (value < values[best]):
            best = k
    return RoundingOutcome(
        allocation=decomposition.terms[best].allocation,
        value=values[best],
        expected_value=float(np.dot(decomposition.weights, analysis)),
        term_index=best,
        terms=len(decomposition),
    )


def round_solution(
    instance: Instance,
    solution: FractionalSolution,
    mode: RoundingMode = RoundingMode.BEST,
    seed: Optional[int] = None,
) -> RoundingOutcome:
    """
    Partition, decompose and pick an allocation for a solved relaxation.

    Args:
        instance: The instance the solution belongs to
        solution: Output of a relax solver
        mode: BEST for the derandomized choice, SAMPLE for a seeded draw
        seed: Seed for SAMPLE mode (0 when omitted)

    Returns:
        RoundingOutcome
    """
    decomposition = decompose(partition_groups(solution.x, instance))
    if mode is RoundingMode.BEST:
        outcome = best_allocation(decomposition, instance)
    else:
        values, analysis = _term_scores(decomposition, instance)
        k = sample_index(decomposition, seed or 0)
        outcome = RoundingOutcome(
            allocation=decomposition.terms[k].allocation,
            value=values[k],
            expected_value=float(np.dot(decomposition.weights, analysis)),
            term_index=k,
            terms=len(decomposition),
        )
    logger.info("rounded", mode=mode.value, terms=outcome.terms, value=outcome.value)
    return outcome
