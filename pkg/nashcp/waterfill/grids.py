"""
Candidate water levels for the discretized surrogates.

NSW grids descend geometrically from r = Σ v by factors of (1+ε) and stop
before falling below ℓ = min v. Scheduling grids ascend from ℓ by factors of
(1+ε) up to r and always contain 0 and r.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .profiles import ProfileRole
from ..config import get_settings
from ..errors import GridError


@dataclass(frozen=True, eq=False)
class Grid:
    """
    A strictly increasing set of candidate levels H_i.

    Attributes:
        levels: Sorted candidate levels
        eps: Geometric ratio parameter used to build the grid
        role: NSW or scheduling ladder
    """
    levels: np.ndarray
    eps: float
    role: ProfileRole

    def __post_init__(self):
        levels = np.array(self.levels, dtype=float)
        levels.flags.writeable = False
        object.__setattr__(self, 'levels', levels)

    def __len__(self) -> int:
        return int(self.levels.size)


def _ladder_length(ratio: float, eps: float, limit: int) -> int:
    steps = int(math.floor(math.log(ratio) / math.log1p(eps))) + 2
    if steps > limit:
        raise GridError(f"Grid would need {steps} levels, above the limit of {limit}")
    return steps


def _check_inputs(values: np.ndarray, eps: float) -> np.ndarray:
    data = np.asarray(values, dtype=float).ravel()
    if data.size == 0:
        raise GridError("Cannot build a grid from an empty value list")
    if not eps > 0.0:
        raise GridError(f"Grid parameter eps must be positive, got {eps}")
    if np.any(data <= 0.0) or not np.all(np.isfinite(data)):
        raise GridError("Grid values must be finite and positive")
    return data


def nsw_grid(values: np.ndarray, eps: float, max_points: Optional[int] = None) -> Grid:
    """
    Build H_i = {r (1+ε)^{-t} >= ℓ : t >= 0}.

    Args:
        values: The agent's values over M_i
        eps: Positive precision parameter
        max_points: Size guard (defaults to the configured limit)

    Returns:
        Grid with levels in increasing order
    """
    data = _check_inputs(values, eps)
    limit = max_points or get_settings().max_grid_points
    low, high = float(data.min()), float(data.sum())
    steps = _ladder_length(high / low, eps, limit)
    ladder = high * np.power(1.0 + eps, -np.arange(steps, dtype=float))
    ladder = ladder[ladder >= low * (1.0 - 1e-12)]
    return Grid(np.unique(ladder), eps, ProfileRole.NSW)


def sched_grid(sizes: np.ndarray, eps: float, max_points: Optional[int] = None) -> Grid:
    """
    Build H_i = {0} ∪ {ℓ (1+ε)^t <= r : t >= 0} ∪ {r}.

    Args:
        sizes: The machine's processing times over all jobs
        eps: Positive precision parameter
        max_points: Size guard (defaults to the configured limit)

    Returns:
        Grid with levels in increasing order
    """
    data = _check_inputs(sizes, eps)
    limit = max_points or get_settings().max_grid_points
    low, high = float(data.min()), float(data.sum())
    steps = _ladder_length(high / low, eps, limit)
    ladder = low * np.power(1.0 + eps, np.arange(steps, dtype=float))
    ladder = ladder[ladder <= high * (1.0 + 1e-12)]
    levels = np.unique(np.concatenate(([0.0], np.minimum(ladder, high), [high])))
    return Grid(levels, eps, ProfileRole.SCHED)
