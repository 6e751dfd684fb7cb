"""
Convex cost functions θ for load-based scheduling objectives.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import ProfileError

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ThetaSpec:
    """
    Paired evaluators for θ and θ'.

    Attributes:
        name: Human-readable label
        value: θ(t), vectorized over numpy arrays
        derivative: θ'(t), vectorized over numpy arrays
        exponent: k when θ(t) = t^k, else None
    """
    name: str
    value: ArrayFn
    derivative: ArrayFn
    exponent: Optional[float] = None

    def __call__(self, t):
        return self.value(np.asarray(t, dtype=float))

    def prime(self, t):
        return self.derivative(np.asarray(t, dtype=float))

    def check(self, samples: np.ndarray) -> None:
        """
        Verify θ(0) = 0 and that θ, θ' are nonnegative and nondecreasing on samples.

        Raises:
            ProfileError: If any property fails
        """
        grid = np.sort(np.asarray(samples, dtype=float))
        if abs(float(self(0.0))) > 0.0:
            raise ProfileError(f"{self.name}: theta(0) must be 0")
        values = self(grid)
        slopes = self.prime(grid)
        if np.any(values < 0.0) or np.any(slopes < 0.0):
            raise ProfileError(f"{self.name}: theta and theta' must be nonnegative")
        if np.any(np.diff(values) < 0.0) or np.any(np.diff(slopes) < 0.0):
            raise ProfileError(f"{self.name}: theta and theta' must be nondecreasing")


def power_theta(k: float) -> ThetaSpec:
    """θ(t) = t^k with θ'(t) = k t^{k−1}, for k >= 1."""
    if not k >= 1.0:
        raise ProfileError(f"Power exponent must be at least 1, got {k}")
    exponent = float(k)
    return ThetaSpec(
        name=f"t^{exponent:g}",
        value=lambda t: np.power(t, exponent),
        derivative=lambda t: exponent * np.power(t, exponent - 1.0),
        exponent=exponent,
    )
