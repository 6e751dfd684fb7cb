"""
Instance validation.

Violations are returned as data so callers can report all of them at once;
ensure_valid converts a non-empty list into an InstanceError.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .instances import NswInstance, ObjectiveKind, SchedInstance
from ..config import WEIGHT_SUM_TOL
from ..errors import InstanceError


@dataclass(frozen=True)
class Violation:
    """A single invariant violation and where it occurs."""
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


def _validate_nsw(instance: NswInstance) -> List[Violation]:
    violations: List[Violation] = []
    if not instance.agents:
        violations.append(Violation('agents', 'instance has no agents'))

    for agent_id, count in Counter(a.id for a in instance.agents).items():
        if count > 1:
            violations.append(Violation(f"agent {agent_id}", 'duplicate agent id'))
    for item_id, count in Counter(instance.items).items():
        if count > 1:
            violations.append(Violation(f"item {item_id}", 'duplicate item id'))

    for agent in instance.agents:
        if not math.isfinite(agent.weight) or agent.weight <= 0.0:
            violations.append(Violation(f"agent {agent.id}", f"weight must be positive, got {agent.weight}"))
    total = sum(a.weight for a in instance.agents)
    if instance.agents and abs(total - 1.0) > WEIGHT_SUM_TOL:
        violations.append(Violation('weights', f"weights sum to {total:.10g}"))

    agent_ids = set(instance.agent_ids)
    item_ids = set(instance.items)
    seen = Counter((e.agent, e.item) for e in instance.edges)
    for (agent, item), count in seen.items():
        if count > 1:
            violations.append(Violation(f"edge ({agent}, {item})", 'duplicate edge'))
    for edge in instance.edges:
        location = f"edge ({edge.agent}, {edge.item})"
        if edge.agent not in agent_ids:
            violations.append(Violation(location, f"unknown agent {edge.agent}"))
        if edge.item not in item_ids:
            violations.append(Violation(location, f"unknown item {edge.item}"))
        if not math.isfinite(edge.value) or edge.value <= 0.0:
            violations.append(Violation(location, f"value must be positive, got {edge.value}"))

    touched_agents = {e.agent for e in instance.edges}
    touched_items = {e.item for e in instance.edges}
    for agent in instance.agent_ids:
        if agent not in touched_agents:
            violations.append(Violation(f"agent {agent}", f"agent {agent} has no incident edge"))
    for item in instance.items:
        if item not in touched_items:
            violations.append(Violation(f"item {item}", f"item {item} has no incident edge"))
    return violations


def _validate_sched(instance: SchedInstance) -> List[Violation]:
    violations: List[Violation] = []
    if not instance.machines:
        violations.append(Violation('machines', 'instance has no machines'))
    for machine, count in Counter(instance.machines).items():
        if count > 1:
            violations.append(Violation(f"machine {machine}", 'duplicate machine id'))
    for job, count in Counter(instance.jobs).items():
        if count > 1:
            violations.append(Violation(f"job {job}", 'duplicate job id'))

    expected = (instance.num_machines, instance.num_jobs)
    if instance.p.shape != expected:
        violations.append(Violation('p', f"matrix shape {instance.p.shape} does not match {expected}"))
    else:
        bad = np.argwhere(~np.isfinite(instance.p) | (instance.p <= 0.0))
        for i, j in bad:
            violations.append(Violation(
                f"p[{instance.machines[i]}, {instance.jobs[j]}]",
                f"processing time must be positive, got {instance.p[i, j]}",
            ))

    objective = instance.objective
    if objective.kind is ObjectiveKind.POWER_LOAD and not objective.k >= 1.0:
        violations.append(Violation('objective', f"exponent k must be at least 1, got {objective.k}"))
    return violations


def validate(instance: Union[NswInstance, SchedInstance]) -> List[Violation]:
    """
    List every invariant violation of an instance.

    Args:
        instance: Parsed NSW or scheduling instance

    Returns:
        All violations with locations; an empty list means the instance is valid
    """
    if isinstance(instance, NswInstance):
        return _validate_nsw(instance)
    if isinstance(instance, SchedInstance):
        return _validate_sched(instance)
    raise TypeError(f"Cannot validate object of type {type(instance).__name__}")


def ensure_valid(instance: Union[NswInstance, SchedInstance]) -> None:
    """Raise InstanceError listing all violations, if any."""
    violations = validate(instance)
    if violations:
        summary = '; '.join(str(v) for v in violations)
        raise InstanceError(f"Invalid instance: {summary}", [str(v) for v in violations])
