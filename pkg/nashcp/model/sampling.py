"""Random feasible fractional assignments around an anchor point."""

from typing import Dict, Tuple

import numpy as np

from .allocation import FractionalAssignment
from .instances import NswInstance
from ..config import RESIDUAL_TOL


def random_feasible_assignment(
    instance: NswInstance,
    anchor: FractionalAssignment,
    rng: np.random.Generator,
    strength: float = 0.5,
) -> FractionalAssignment:
    """
    Mix a feasible CP(NSW) point with a random column-stochastic point.

    The mixing weight starts at `strength` and is halved until every agent
    keeps mass at least one; the anchor itself is returned if no mix works.
    """
    noise: Dict[Tuple[str, str], float] = {}
    for item, agents in instance.item_agents.items():
        shares = rng.dirichlet(np.ones(len(agents)))
        for agent, share in zip(agents, shares):
            noise[(agent, item)] = float(share)

    keys = set(anchor) | set(noise)
    tau = strength
    for _ in range(20):
        mixed = {key: (1.0 - tau) * anchor.get_mass(*key) + tau * noise.get(key, 0.0) for key in keys}
        candidate = FractionalAssignment(mixed)
        if all(candidate.player_mass(a) >= 1.0 - RESIDUAL_TOL for a in instance.agent_ids):
            return candidate
        tau /= 2.0
    return anchor
