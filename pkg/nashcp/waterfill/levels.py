"""
Water levels by exact breakpoint scan.

The level h solves base + Σ_j min{v_j, h}·x_j = h. The left side is concave
and piecewise linear in h with breakpoints at the values, so on each segment
between consecutive distinct values the equation is linear and is solved in
closed form.
"""

import math

import numpy as np

from .profiles import LevelConvention, ValueMassProfile
from ..config import RESIDUAL_TOL, ZERO_MASS_TOL
from ..errors import InvariantError, ProfileError


def solve_level(values: np.ndarray, masses: np.ndarray, base: float = 0.0) -> float:
    """
    Solve base + Σ min{v_j, h} x_j = h for the largest root h.

    Requires base > 0, or base == 0 with Σ x_j > 1; entries with negligible mass
    are ignored.

    Args:
        values: Positive breakpoints v_j
        masses: Nonnegative masses x_j
        base: Constant term added to the poured mass

    Returns:
        The unique positive root
    """
    keep = masses > ZERO_MASS_TOL
    v = np.asarray(values, dtype=float)[keep]
    x = np.asarray(masses, dtype=float)[keep]
    if base <= 0.0 and x.sum() <= 1.0:
        raise ProfileError("Water level is only positive when the total mass exceeds one")

    order = np.argsort(v, kind='stable')
    v = v[order]
    x = x[order]
    distinct, starts = np.unique(v, return_index=True)
    # Mass and poured value strictly below each breakpoint
    cum_mass = np.concatenate(([0.0], np.cumsum(x)))
    cum_value = np.concatenate(([0.0], np.cumsum(v * x)))
    total = cum_mass[-1]

    breakpoints = np.concatenate(([0.0], distinct))
    # Segment t covers [breakpoints[t], breakpoints[t+1]]; entries with v <= breakpoints[t] are saturated.
    ends = np.concatenate((starts[1:], [v.size]))
    for t in range(breakpoints.size):
        saturated = 0 if t == 0 else ends[t - 1]
        poured = cum_value[saturated]
        above = total - cum_mass[saturated]
        if above >= 1.0:
            continue
        h = (base + poured) / (1.0 - above)
        upper = breakpoints[t + 1] if t + 1 < breakpoints.size else math.inf
        if h <= upper:
            return float(max(h, breakpoints[t]))
    raise InvariantError("Breakpoint scan found no water level")


def level_residual(values: np.ndarray, masses: np.ndarray, h: float, base: float = 0.0) -> float:
    """|base + Σ min{v, h} x − h|."""
    poured = float(np.dot(np.minimum(values, h), masses))
    return abs(base + poured - h)


def water_level(profile: ValueMassProfile, convention: LevelConvention) -> float:
    """
    Water-filling level h_i(x_i) of a profile.

    If the total mass exceeds one, returns the unique h > 0 with
    Σ_j min{v_j, h} x_j = h. Otherwise returns min{v_j : x_j > 0} under
    MIN_SUPPORT_VALUE and 0 under ZERO.

    Args:
        profile: The player's values and masses
        convention: Behaviour when the total mass is at most one

    Returns:
        The water level h >= 0

    Raises:
        ProfileError: For a profile with total mass below one under MIN_SUPPORT_VALUE
    """
    total = profile.total_mass
    if total <= 1.0 + ZERO_MASS_TOL:
        if convention is LevelConvention.ZERO:
            return 0.0
        if total < 1.0 - RESIDUAL_TOL:
            raise ProfileError(f"Total mass {total:.12g} is below one")
        lowest = profile.min_support_value()
        if lowest is None:
            raise ProfileError("Profile has empty support")
        return lowest
    return solve_level(profile.values, profile.masses)
