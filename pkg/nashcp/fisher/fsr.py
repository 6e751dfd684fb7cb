"""
Spending-Restricted Fisher Program

This module implements the objective of the spending-restricted (f-SR) Fisher
market program for unweighted instances and two maps into its feasible set:
1. construct_from_x: spending b_ij = x_ij·min{v_ij, h_i}/h_i from a feasible
   CP(NSW) assignment, h_i being agent i's water level
2. allocation_to_fsr: spending v_ij / v_i(bundle) for an integral allocation

Feasibility means Σ_{i ∈ N_j} b_ij = q_j, Σ_{j ∈ M_i} b_ij = 1, b_ij >= 0 and
q_j <= 1. 0·ln 0 is taken as 0 everywhere.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Tuple

import numpy as np

from ..config import FEASIBILITY_TOL, WEIGHT_SUM_TOL
from ..errors import FsrError
from ..model import Allocation, FractionalAssignment, NswInstance, bundle_values
from ..relax import agent_profile
from ..waterfill import LevelConvention, water_level

UNWEIGHTED_ONLY = "f-SR applies only to the unweighted case"


def _xlogx(values: np.ndarray) -> np.ndarray:
    positive = values > 0.0
    out = np.zeros_like(values)
    out[positive] = values[positive] * np.log(values[positive])
    return out


@dataclass(frozen=True)
class FsrSolution:
    """
    Spending b_ij on edges and item totals q_j.

    Attributes:
        spending: (agent, item) -> b_ij
        q: item -> q_j
    """
    spending: Mapping[Tuple[str, str], float]
    q: Mapping[str, float]

    def violations(self, instance: NswInstance, tol: float = FEASIBILITY_TOL) -> List[str]:
        """Human-readable list of violated f-SR constraints; empty when feasible."""
        problems: List[str] = []
        values = instance.values
        agent_total = {a: 0.0 for a in instance.agent_ids}
        item_total = {j: 0.0 for j in instance.items}
        for (agent, item), b in self.spending.items():
            if (agent, item) not in values:
                problems.append(f"spending on non-edge ({agent}, {item})")
                continue
            if b < -tol:
                problems.append(f"negative spending b[{agent},{item}] = {b:.3g}")
            agent_total[agent] += b
            item_total[item] += b
        for agent, total in agent_total.items():
            if abs(total - 1.0) > tol:
                problems.append(f"agent {agent} spends {total:.10g} instead of 1")
        for item in instance.items:
            q = self.q.get(item, 0.0)
            if abs(item_total[item] - q) > tol:
                problems.append(f"item {item}: spending {item_total[item]:.10g} differs from q = {q:.10g}")
            if q > 1.0 + tol:
                problems.append(f"item {item}: q = {q:.10g} exceeds 1")
            if q < -tol:
                problems.append(f"item {item}: q = {q:.10g} is negative")
        return problems

    def to_dict(self) -> Dict[str, Any]:
        return {
            'spending': [[a, j, b] for (a, j), b in sorted(self.spending.items())],
            'q': dict(sorted(self.q.items())),
        }


def _require_unweighted(instance: NswInstance) -> None:
    if not instance.is_unweighted(WEIGHT_SUM_TOL):
        raise FsrError(UNWEIGHTED_ONLY)


def fsr_objective(instance: NswInstance, fsr: FsrSolution) -> float:
    """
    Evaluate (1/n)(Σ_{ij ∈ E} b_ij ln v_ij − Σ_j q_j ln q_j).

    Raises:
        FsrError: For a weighted instance or an infeasible fsr
    """
    _require_unweighted(instance)
    problems = fsr.violations(instance)
    if problems:
        raise FsrError(f"Infeasible f-SR solution: {'; '.join(problems)}")
    values = instance.values
    keys = list(fsr.spending)
    b = np.array([fsr.spending[k] for k in keys], dtype=float)
    v = np.array([values[k] for k in keys], dtype=float)
    q = np.array([fsr.q.get(j, 0.0) for j in instance.items], dtype=float)
    return float((np.dot(np.clip(b, 0.0, None), np.log(v)) - _xlogx(np.clip(q, 0.0, None)).sum()) / instance.n)


def construct_from_x(instance: NswInstance, x: FractionalAssignment) -> FsrSolution:
    """
    Map a feasible CP(NSW) assignment to a feasible f-SR solution.

    Args:
        instance: Unweighted NSW instance
        x: Assignment giving every agent mass at least one

    Returns:
        FsrSolution whose objective is at least (1/n)Σ_i f_i(x_i)

    Raises:
        FsrError: For a weighted instance
    """
    _require_unweighted(instance)
    spending: Dict[Tuple[str, str], float] = {}
    q = {j: 0.0 for j in instance.items}
    for agent in instance.agent_ids:
        profile = agent_profile(instance, x, agent)
        h = water_level(profile, LevelConvention.MIN_SUPPORT_VALUE)
        shares = profile.masses * np.minimum(profile.values, h) / h
        for item, b in zip(instance.agent_items[agent], shares):
            if b > 0.0:
                spending[(agent, item)] = float(b)
                q[item] += float(b)
    return FsrSolution(spending, q)


def allocation_to_fsr(instance: NswInstance, allocation: Allocation) -> FsrSolution:
    """
    Embed an integral allocation: b_ij = v_ij / v_i(bundle) for i = ρ(j), q_j = b_ij.

    Its objective equals the log of the allocation's unweighted NSW.

    Raises:
        FsrError: For a weighted instance or an agent with an empty bundle
    """
    _require_unweighted(instance)
    totals = bundle_values(instance, allocation)
    empty = [a for a, total in totals.items() if total <= 0.0]
    if empty:
        raise FsrError(f"Agents {', '.join(empty)} receive nothing")
    spending = {
        (agent, item): instance.values[(agent, item)] / totals[agent]
        for item, agent in allocation.items()
    }
    return FsrSolution(spending, {item: spending[(agent, item)] for item, agent in allocation.items()})
