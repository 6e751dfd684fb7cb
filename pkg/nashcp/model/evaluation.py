"""
Objective evaluation for NSW and scheduling allocations.
"""

import math
from typing import Dict

from .allocation import Allocation
from .instances import NswInstance, ObjectiveKind, SchedInstance
from ..errors import AllocationError


def bundle_values(instance: NswInstance, allocation: Allocation) -> Dict[str, float]:
    """
    Compute v_i(ρ⁻¹(i)) for every agent.

    Raises:
        AllocationError: If an item is unknown or sent to a non-adjacent agent
    """
    values = instance.values
    totals = {a: 0.0 for a in instance.agent_ids}
    for item, agent in allocation.items():
        if agent not in totals:
            raise AllocationError(f"Item {item} allocated to unknown agent {agent}")
        value = values.get((agent, item))
        if value is None:
            raise AllocationError(f"Item {item} allocated to non-adjacent agent {agent}")
        totals[agent] += value
    return totals


def nsw_value(instance: NswInstance, allocation: Allocation) -> float:
    """
    Weighted Nash social welfare Π_i v_i(ρ⁻¹(i))^{w_i}.

    Returns 0 when an agent with positive weight receives nothing.
    """
    totals = bundle_values(instance, allocation)
    product = 1.0
    for agent in instance.agents:
        total = totals[agent.id]
        if total <= 0.0:
            if agent.weight > 0.0:
                return 0.0
            continue
        product *= total ** agent.weight
    return product


def log_nsw(instance: NswInstance, allocation: Allocation) -> float:
    """Σ_i w_i ln v_i(ρ⁻¹(i)); -inf when a weighted agent's bundle is empty."""
    totals = bundle_values(instance, allocation)
    result = 0.0
    for agent in instance.agents:
        total = totals[agent.id]
        if total <= 0.0:
            if agent.weight > 0.0:
                return -math.inf
            continue
        result += agent.weight * math.log(total)
    return result


def machine_loads(instance: SchedInstance, allocation: Allocation) -> Dict[str, float]:
    loads = {mid: 0.0 for mid in instance.machines}
    for job, machine in allocation.items():
        if machine not in loads:
            raise AllocationError(f"Job {job} assigned to unknown machine {machine}")
        if job not in instance.job_index:
            raise AllocationError(f"Unknown job {job}")
        loads[machine] += instance.size(machine, job)
    return loads


def sched_cost(instance: SchedInstance, allocation: Allocation) -> float:
    """
    Scheduling cost of a total allocation.

    PowerLoad: Σ_i load_i^k. Completion: ½Σ_i (load_i² + Σ_{j→i} p_ij²).
    """
    loads = machine_loads(instance, allocation)
    if instance.objective.kind is ObjectiveKind.POWER_LOAD:
        k = instance.objective.k
        return float(sum(load ** k for load in loads.values()))

    squares = sum(instance.size(machine, job) ** 2 for job, machine in allocation.items())
    return 0.5 * (sum(load * load for load in loads.values()) + squares)
