"""
CP(NSW) / f-SR equivalence checks and integrality-gap instance families for
unweighted instances.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import structlog

from .fsr import UNWEIGHTED_ONLY, construct_from_x, fsr_objective
from ..config import WEIGHT_SUM_TOL, get_settings
from ..errors import FsrError, InstanceError
from ..lpcore import LpBackend
from ..model import NswInstance
from ..relax import FractionalSolution, solve_cp_nsw

logger = structlog.get_logger(__name__)

# Slack added to ln(1+ε) when comparing the two program values
EQUIVALENCE_SLACK = 1e-6


@dataclass(frozen=True)
class EquivalenceReport:
    """
    CP value against the f-SR value of the constructed spending.

    Attributes:
        cp_value: Σ w_i f̄_i at the LP optimum
        fsr_value: f-SR objective of construct_from_x at that optimum
        gap: fsr_value − cp_value
        band: ln(1+ε) + slack, the bound |gap| is checked against
        eps: Grid precision
    """
    cp_value: float
    fsr_value: float
    gap: float
    band: float
    eps: float

    @property
    def within_band(self) -> bool:
        return abs(self.gap) <= self.band

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cp_value': self.cp_value,
            'fsr_value': self.fsr_value,
            'gap': self.gap,
            'band': self.band,
            'eps': self.eps,
            'pass': self.within_band,
        }


def equivalence_from_solution(instance: NswInstance, solution: FractionalSolution) -> EquivalenceReport:
    """Compare an already solved CP(NSW) with the f-SR value of its construction."""
    fsr_value = fsr_objective(instance, construct_from_x(instance, solution.x))
    return EquivalenceReport(
        cp_value=solution.value,
        fsr_value=fsr_value,
        gap=fsr_value - solution.value,
        band=math.log1p(solution.eps) + EQUIVALENCE_SLACK,
        eps=solution.eps,
    )


def equivalence_report(
    instance: NswInstance,
    eps: Optional[float] = None,
    backend: Optional[LpBackend] = None,
) -> EquivalenceReport:
    """
    Solve CP(NSW) at precision eps and compare with the f-SR value of the construction.

    Raises:
        FsrError: For a weighted instance
    """
    if not instance.is_unweighted(WEIGHT_SUM_TOL):
        raise FsrError(UNWEIGHTED_ONLY)
    eps = eps if eps is not None else get_settings().eps
    report = equivalence_from_solution(instance, solve_cp_nsw(instance, eps, backend))
    logger.info("fsr_equivalence", cp_value=report.cp_value, fsr_value=report.fsr_value, gap=report.gap)
    return report


def integrality_gap_family(n: int, big: float, small_count: int) -> NswInstance:
    """
    Identical unweighted agents facing one item of value `big` and `small_count` unit items.

    Args:
        n: Number of agents
        big: Value of the single large item
        small_count: Number of unit-value items

    Returns:
        Complete-graph NswInstance with agents a1..an and items j1 (large), j2, ...

    Raises:
        InstanceError: When there are fewer items than agents or big <= 0
    """
    if n < 1 or small_count < 0 or small_count + 1 < n:
        raise InstanceError(f"Need n >= 1 agents and at least n items, got n={n}, items={small_count + 1}")
    if not big > 0:
        raise InstanceError(f"Large item value must be positive, got {big}")
    agents = [f"a{i + 1}" for i in range(n)]
    items = [f"j{t + 1}" for t in range(small_count + 1)]
    values = {(a, j): (float(big) if j == items[0] else 1.0) for a in agents for j in items}
    return NswInstance.uniform(agents, items, values)


def shared_items_family(n: int, shared: int, big: float, private_items: int) -> NswInstance:
    """
    Unweighted agents that each own a few low-value items and compete for a few shared ones.

    Agent a_i alone values its `private_items` items p_i_1, p_i_2, ... at
    1/private_items each. Every agent values the shared items s1..s_shared at
    `big`. The integral optimum is (1 + big)^(shared/n): each shared item goes
    to a different agent. The relaxation spreads the shared items over all
    agents and lifts every water level, so with shared ≈ n(1 − 1/e) and a large
    `big` the ratio approaches e^{1/e}.

    Raises:
        InstanceError: When shared is not in [1, n], private_items < 1 or big <= 0
    """
    if n < 1 or not 1 <= shared <= n or private_items < 1:
        raise InstanceError(
            f"Need 1 <= shared <= n and private_items >= 1, got n={n}, shared={shared}, "
            f"private_items={private_items}"
        )
    if not big > 0:
        raise InstanceError(f"Shared item value must be positive, got {big}")
    agents = [f"a{i + 1}" for i in range(n)]
    shared_ids = [f"s{t + 1}" for t in range(shared)]
    items = list(shared_ids)
    values: Dict[Tuple[str, str], float] = {(a, s): float(big) for a in agents for s in shared_ids}
    for i, agent in enumerate(agents):
        for t in range(private_items):
            item = f"p{i + 1}_{t + 1}"
            items.append(item)
            values[(agent, item)] = 1.0 / private_items
    return NswInstance.uniform(agents, items, values)
