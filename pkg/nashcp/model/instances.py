"""
Instance Model

This module implements the two instance families handled by nashcp:
1. NswInstance: a bipartite agent/item valuation structure with agent weights
2. SchedInstance: a dense machine/job processing-time matrix with an objective

Instances are immutable. Construction never rejects data that violates the
domain invariants; use nashcp.model.validation.validate to list violations.
"""

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from ..config import WEIGHT_SUM_TOL
from ..errors import InstanceError


@dataclass(frozen=True)
class Agent:
    """An agent and its weight w_i."""
    id: str
    weight: float


@dataclass(frozen=True)
class Edge:
    """A valued agent/item pair; missing pairs cannot be allocated."""
    agent: str
    item: str
    value: float


@dataclass(frozen=True)
class NswInstance:
    """
    Weighted Nash social welfare instance.

    Attributes:
        agents: Agents with positive weights summing to one
        items: Item identifiers
        edges: Valued (agent, item) pairs
    """
    agents: Tuple[Agent, ...]
    items: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, 'agents', tuple(self.agents))
        object.__setattr__(self, 'items', tuple(self.items))
        object.__setattr__(self, 'edges', tuple(self.edges))

    @classmethod
    def uniform(
        cls,
        agents: Iterable[str],
        items: Iterable[str],
        values: Mapping[Tuple[str, str], float],
    ) -> 'NswInstance':
        """Build an unweighted instance (w_i = 1/n) from an (agent, item) -> value map."""
        agent_ids = list(agents)
        item_ids = list(items)
        weight = 1.0 / len(agent_ids) if agent_ids else 0.0
        edges = [
            Edge(a, j, float(values[(a, j)]))
            for a in agent_ids
            for j in item_ids
            if (a, j) in values
        ]
        return cls(tuple(Agent(a, weight) for a in agent_ids), tuple(item_ids), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.items)

    @cached_property
    def agent_ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.agents)

    @cached_property
    def weights(self) -> Dict[str, float]:
        return {a.id: a.weight for a in self.agents}

    @cached_property
    def values(self) -> Dict[Tuple[str, str], float]:
        return {(e.agent, e.item): e.value for e in self.edges}

    @cached_property
    def agent_items(self) -> Dict[str, Tuple[str, ...]]:
        """M_i: items adjacent to each agent, in instance item order."""
        values = self.values
        return {a: tuple(j for j in self.items if (a, j) in values) for a in self.agent_ids}

    @cached_property
    def item_agents(self) -> Dict[str, Tuple[str, ...]]:
        """N_j: agents adjacent to each item, in instance agent order."""
        values = self.values
        return {j: tuple(a for a in self.agent_ids if (a, j) in values) for j in self.items}

    def value(self, agent: str, item: str) -> Optional[float]:
        return self.values.get((agent, item))

    def agent_values(self, agent: str) -> np.ndarray:
        """Values of M_i, aligned with agent_items[agent]."""
        return np.array([self.values[(agent, j)] for j in self.agent_items[agent]], dtype=float)

    def is_unweighted(self, tol: float = WEIGHT_SUM_TOL) -> bool:
        if not self.agents:
            return False
        target = 1.0 / self.n
        return all(abs(a.weight - target) <= tol for a in self.agents)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the instance to the JSON file layout."""
        return {
            'agents': [{'id': a.id, 'weight': a.weight} for a in self.agents],
            'items': list(self.items),
            'values': [[e.agent, e.item, e.value] for e in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'NswInstance':
        """Create an instance from the JSON file layout."""
        try:
            agents = tuple(Agent(str(a['id']), float(a['weight'])) for a in data['agents'])
            items = tuple(str(j) for j in data['items'])
            edges = tuple(Edge(str(a), str(j), float(v)) for a, j, v in data['values'])
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceError(f"Malformed NSW instance: {e}")
        return cls(agents, items, edges)


class ObjectiveKind(enum.Enum):
    """Scheduling objective families."""
    POWER_LOAD = 'lk'
    COMPLETION = 'completion'


@dataclass(frozen=True)
class SchedObjective:
    """
    Scheduling objective: Σ_i load_i^k (POWER_LOAD) or the uniform-Smith-ratio
    weighted completion time ½Σ_i (load_i² + Σ_{j→i} p_ij²) (COMPLETION).
    """
    kind: ObjectiveKind
    k: float = 2.0

    @classmethod
    def power_load(cls, k: float) -> 'SchedObjective':
        return cls(ObjectiveKind.POWER_LOAD, float(k))

    @classmethod
    def completion(cls) -> 'SchedObjective':
        return cls(ObjectiveKind.COMPLETION, 2.0)

    @classmethod
    def parse(cls, text: str) -> 'SchedObjective':
        """Parse the CLI spelling: l2, lk:K or completion."""
        spelled = text.strip().lower()
        if spelled == 'completion':
            return cls.completion()
        if spelled == 'l2':
            return cls.power_load(2.0)
        if spelled.startswith('lk:'):
            try:
                return cls.power_load(float(spelled[3:]))
            except ValueError:
                pass
        raise InstanceError(f"Unknown scheduling objective '{text}', expected l2, lk:K or completion")

    @property
    def label(self) -> str:
        if self.kind is ObjectiveKind.COMPLETION:
            return 'completion'
        return f"lk:{self.k:g}"

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is ObjectiveKind.COMPLETION:
            return {'kind': 'completion'}
        return {'kind': 'lk', 'k': self.k}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SchedObjective':
        kind = str(data.get('kind', 'lk')).lower()
        if kind == 'completion':
            return cls.completion()
        if kind == 'l2':
            return cls.power_load(2.0)
        if kind == 'lk':
            return cls.power_load(float(data.get('k', 2.0)))
        raise InstanceError(f"Unknown scheduling objective kind '{kind}'")


@dataclass(frozen=True, eq=False)
class SchedInstance:
    """
    Unrelated-machine scheduling instance.

    Attributes:
        machines: Machine identifiers (rows of p)
        jobs: Job identifiers (columns of p)
        p: Processing times p_ij, shape (len(machines), len(jobs))
        objective: Objective to minimize
    """
    machines: Tuple[str, ...]
    jobs: Tuple[str, ...]
    p: np.ndarray
    objective: SchedObjective = field(default_factory=lambda: SchedObjective.power_load(2.0))

    def __post_init__(self):
        matrix = np.array(self.p, dtype=float, copy=True)
        matrix.flags.writeable = False
        object.__setattr__(self, 'machines', tuple(self.machines))
        object.__setattr__(self, 'jobs', tuple(self.jobs))
        object.__setattr__(self, 'p', matrix)

    @property
    def num_machines(self) -> int:
        return len(self.machines)

    @property
    def num_jobs(self) -> int:
        return len(self.jobs)

    @cached_property
    def machine_index(self) -> Dict[str, int]:
        return {mid: i for i, mid in enumerate(self.machines)}

    @cached_property
    def job_index(self) -> Dict[str, int]:
        return {jid: j for j, jid in enumerate(self.jobs)}

    def size(self, machine: str, job: str) -> float:
        return float(self.p[self.machine_index[machine], self.job_index[job]])

    def with_objective(self, objective: SchedObjective) -> 'SchedInstance':
        return SchedInstance(self.machines, self.jobs, self.p, objective)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the instance to the JSON file layout."""
        return {
            'machines': list(self.machines),
            'jobs': list(self.jobs),
            'p': [[float(v) for v in row] for row in self.p],
            'objective': self.objective.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SchedInstance':
        """Create an instance from the JSON file layout."""
        try:
            machines = tuple(str(i) for i in data['machines'])
            jobs = tuple(str(j) for j in data['jobs'])
            rows: List[List[float]] = [[float(v) for v in row] for row in data['p']]
            objective = SchedObjective.from_dict(data.get('objective', {'kind': 'lk', 'k': 2}))
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceError(f"Malformed scheduling instance: {e}")
        if len(rows) != len(machines) or any(len(row) != len(jobs) for row in rows):
            raise InstanceError(
                f"Processing-time matrix must be {len(machines)}x{len(jobs)}"
            )
        matrix = np.array(rows, dtype=float).reshape(len(machines), len(jobs))
        return cls(machines, jobs, matrix, objective)
