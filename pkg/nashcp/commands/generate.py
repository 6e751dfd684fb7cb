"""
Seeded instance generators.

Values and processing times are drawn uniformly from the integers 1..10 with
numpy's default generator, so a seed fully determines the instance.
"""

import enum
from typing import Optional

import numpy as np

from ..ef1 import IdenticalInstance
from ..errors import InstanceError
from ..model import Agent, Edge, NswInstance, SchedInstance, SchedObjective

VALUE_HIGH = 10


class WeightScheme(str, enum.Enum):
    UNIFORM = 'uniform'
    DIRICHLET = 'dirichlet'


def _check_sizes(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise InstanceError(f"Sizes must be at least 1, got n={n}, m={m}")


def generate_nsw(
    n: int,
    m: int,
    seed: int,
    weights: WeightScheme = WeightScheme.UNIFORM,
    density: float = 1.0,
) -> NswInstance:
    """
    Random NSW instance with agents a1..an and items j1..jm.

    Args:
        n: Number of agents
        m: Number of items
        seed: Generator seed
        weights: Uniform 1/n weights or Dirichlet(1) weights renormalized to sum one
        density: Probability of keeping each edge; every agent and item keeps at least one

    Raises:
        InstanceError: For sizes below one or a density outside (0, 1]
    """
    _check_sizes(n, m)
    if not 0.0 < density <= 1.0:
        raise InstanceError(f"Density must lie in (0, 1], got {density}")
    rng = np.random.default_rng(seed)
    values = rng.integers(1, VALUE_HIGH + 1, size=(n, m))
    keep = rng.random((n, m)) < density
    for j in np.flatnonzero(~keep.any(axis=0)):
        keep[rng.integers(n), j] = True
    for i in np.flatnonzero(~keep.any(axis=1)):
        keep[i, rng.integers(m)] = True

    if weights is WeightScheme.DIRICHLET:
        w = rng.dirichlet(np.ones(n))
        w = w / w.sum()
    else:
        w = np.full(n, 1.0 / n)

    agents = tuple(Agent(f"a{i + 1}", float(w[i])) for i in range(n))
    items = tuple(f"j{j + 1}" for j in range(m))
    edges = tuple(
        Edge(agents[i].id, items[j], float(values[i, j]))
        for i in range(n)
        for j in range(m)
        if keep[i, j]
    )
    return NswInstance(agents, items, edges)


def generate_sched(
    jobs: int,
    machines: int,
    seed: int,
    objective: Optional[SchedObjective] = None,
) -> SchedInstance:
    """Random unrelated-machine instance with machines m1.. and jobs j1..."""
    _check_sizes(jobs, machines)
    rng = np.random.default_rng(seed)
    p = rng.integers(1, VALUE_HIGH + 1, size=(machines, jobs)).astype(float)
    return SchedInstance(
        tuple(f"m{i + 1}" for i in range(machines)),
        tuple(f"j{j + 1}" for j in range(jobs)),
        p,
        objective or SchedObjective.power_load(2.0),
    )


def generate_identical(n: int, m: int, seed: int, high: int = 6) -> IdenticalInstance:
    """Identical agents a1..an and m items with values in 1..high."""
    _check_sizes(n, m)
    rng = np.random.default_rng(seed)
    return IdenticalInstance.from_values(rng.integers(1, high + 1, size=m).astype(float).tolist(), n)
