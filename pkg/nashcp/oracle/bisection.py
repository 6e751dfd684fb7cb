"""
Bisection oracles for water levels, independent of the breakpoint scan.
"""

import numpy as np

from ..errors import ProfileError
from ..waterfill import LevelConvention, ValueMassProfile

BISECTION_STEPS = 200


def bisect_level(values: np.ndarray, masses: np.ndarray, base: float = 0.0) -> float:
    """
    Largest root of base + Σ min{v_j, h} x_j − h by bisection.

    Raises:
        ProfileError: When base = 0 and Σ x_j <= 1 (no positive root)
    """
    v = np.asarray(values, dtype=float)
    x = np.asarray(masses, dtype=float)
    total = float(x.sum())
    if base <= 0.0 and total <= 1.0:
        raise ProfileError("Water level is only positive when the total mass exceeds one")

    def residual(h: float) -> float:
        return base + float(np.dot(np.minimum(v, h), x)) - h

    hi = base + float(np.dot(v, x)) + 1.0
    positive = v[x > 0.0]
    lo = 0.5 * float(positive.min()) if base <= 0.0 else 0.0
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_water_level(profile: ValueMassProfile, convention: LevelConvention) -> float:
    """Water level of a profile, using bisection when the total mass exceeds one."""
    total = profile.total_mass
    if total <= 1.0:
        if convention is LevelConvention.ZERO:
            return 0.0
        lowest = profile.min_support_value()
        if lowest is None:
            raise ProfileError("Profile has empty support")
        return lowest
    return bisect_level(profile.values, profile.masses)
