"""
Identical Agents

This module implements the identical-valuation setting, where every agent
values item j at v_j:
1. IdenticalInstance with conversion to and from the general NSW model
2. EF1 checking with a violating pair as witness
3. A greedy EF1 allocator: items by non-increasing value, each to the
   currently poorest bundle
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Optional, Tuple

from ..errors import AllocationError, InstanceError, InvariantError
from ..model import Allocation, NswInstance

EF1_TOL = 1e-9


@dataclass(frozen=True)
class IdenticalInstance:
    """
    Unweighted instance whose agents share one valuation.

    Attributes:
        agents: Agent identifiers
        items: Item identifiers
        values: v_j aligned with items
    """
    agents: Tuple[str, ...]
    items: Tuple[str, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'agents', tuple(self.agents))
        object.__setattr__(self, 'items', tuple(self.items))
        object.__setattr__(self, 'values', tuple(float(v) for v in self.values))
        if not self.agents:
            raise InstanceError("An identical-agent instance needs at least one agent")
        if len(self.items) != len(self.values):
            raise InstanceError(f"Got {len(self.items)} items but {len(self.values)} values")
        if any(not (math.isfinite(v) and v > 0.0) for v in self.values):
            raise InstanceError("Item values must be finite and positive")

    @classmethod
    def from_values(cls, values: Iterable[float], n: int) -> 'IdenticalInstance':
        """Agents a1..an and items j1..jm carrying the given values."""
        vals = tuple(values)
        return cls(
            tuple(f"a{i + 1}" for i in range(n)),
            tuple(f"j{t + 1}" for t in range(len(vals))),
            vals,
        )

    @classmethod
    def from_nsw_instance(cls, instance: NswInstance) -> 'IdenticalInstance':
        """
        Read an NSW instance whose agents all value every item identically.

        Raises:
            InstanceError: If some agent misses an edge or values an item differently
        """
        values = []
        for item in instance.items:
            seen = {instance.value(a, item) for a in instance.agent_ids}
            if len(seen) != 1 or None in seen:
                raise InstanceError(f"Agents do not value item {item} identically")
            values.append(seen.pop())
        return cls(instance.agent_ids, instance.items, tuple(values))

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.items)

    @cached_property
    def value_of(self) -> Dict[str, float]:
        return dict(zip(self.items, self.values))

    def to_nsw_instance(self) -> NswInstance:
        return NswInstance.uniform(
            self.agents,
            self.items,
            {(a, j): v for a in self.agents for j, v in zip(self.items, self.values)},
        )

    def bundle_values(self, allocation: Allocation) -> Dict[str, float]:
        """
        V_i for every agent.

        Raises:
            AllocationError: If the allocation is not total or names unknown agents
        """
        missing = [j for j in self.items if j not in allocation]
        if missing:
            raise AllocationError(f"Items {', '.join(missing)} are unallocated")
        totals = {a: 0.0 for a in self.agents}
        for item, agent in allocation.items():
            if agent not in totals or item not in self.value_of:
                raise AllocationError(f"Unknown assignment {item} -> {agent}")
            totals[agent] += self.value_of[item]
        return totals


@dataclass(frozen=True)
class EF1Check:
    """EF1 verdict; witness is an (envious, envied) pair when ok is False."""
    ok: bool
    witness: Optional[Tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_ef1(instance: IdenticalInstance, allocation: Allocation, tol: float = EF1_TOL) -> EF1Check:
    """
    Check envy-freeness up to one item.

    Agent i envies i' when V_i < V_{i'} − max{v_j : j in bundle of i'}. Pairs are
    scanned in agent order, so the witness is the first violating pair.
    """
    totals = instance.bundle_values(allocation)
    largest = {a: 0.0 for a in instance.agents}
    for item, agent in allocation.items():
        largest[agent] = max(largest[agent], instance.value_of[item])
    for envious in instance.agents:
        for envied in instance.agents:
            if envious == envied:
                continue
            if totals[envious] < totals[envied] - largest[envied] - tol:
                return EF1Check(False, (envious, envied))
    return EF1Check(True)


def greedy_ef1(instance: IdenticalInstance) -> Allocation:
    """
    Allocate items by non-increasing value, each to the minimum-value bundle.

    Ties between items go to instance item order and ties between bundles to
    the lowest agent index.

    Raises:
        InvariantError: If the result fails the EF1 check
    """
    order = sorted(range(instance.m), key=lambda t: (-instance.values[t], t))
    totals = [0.0] * instance.n
    assignment: Dict[str, str] = {}
    for t in order:
        poorest = min(range(instance.n), key=lambda i: (totals[i], i))
        assignment[instance.items[t]] = instance.agents[poorest]
        totals[poorest] += instance.values[t]
    allocation = Allocation(assignment)
    check = is_ef1(instance, allocation)
    if not check.ok:
        raise InvariantError(f"Greedy allocation is not EF1, witness {check.witness}")
    return allocation


def identical_nsw(instance: IdenticalInstance, allocation: Allocation) -> float:
    """Unweighted NSW (Π_i V_i)^{1/n}; 0 when a bundle is empty."""
    totals = instance.bundle_values(allocation)
    if min(totals.values()) <= 0.0:
        return 0.0
    return math.exp(sum(math.log(v) for v in totals.values()) / instance.n)
