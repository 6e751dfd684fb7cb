"""
Water-fill objective functions.

NSW (concave, maximized):
    f(x)    = Σ_{v_j > h} x_j ln(v_j / h) + ln h,  h = water level of x
    g(x, h) = Σ_{v_j > h} x_j ln(v_j / h) + ln h + (1/h) Σ min{v_j, h} x_j − 1
    f̄(x)    = min over a grid of g(x, h)

Scheduling with convex θ (minimized):
    f(x)    = Σ_{p_j > h} x_j (θ(p_j) − θ(h)) + θ(h)
    g(x, h) = f-expression at h + θ'(h) (Σ min{p_j, h} x_j − h)
    f̄(x)    = max over a grid of g(x, h)

For fixed h each g is linear in x; nsw_cut and theta_cut return its
coefficients so the LP builders and the evaluators share one formula.
"""

from typing import Tuple

import numpy as np

from .grids import Grid
from .levels import water_level
from .profiles import LevelConvention, ValueMassProfile
from .theta import ThetaSpec
from ..errors import GridError, ProfileError


def nsw_cut(values: np.ndarray, h: float) -> Tuple[np.ndarray, float]:
    """
    Coefficients (c, d) with g_nsw(x, h) = c·x + d.

    c_j = [v_j > h] ln(v_j/h) + min{v_j, h}/h and d = ln h − 1.
    """
    if not h > 0.0:
        raise ProfileError(f"NSW level must be positive, got {h}")
    v = np.asarray(values, dtype=float)
    above = np.where(v > h, np.log(np.maximum(v, h) / h), 0.0)
    return above + np.minimum(v, h) / h, float(np.log(h) - 1.0)


def theta_cut(sizes: np.ndarray, h: float, theta: ThetaSpec) -> Tuple[np.ndarray, float]:
    """
    Coefficients (c, d) with g_theta(x, h) = c·x + d.

    c_j = [p_j > h](θ(p_j) − θ(h)) + θ'(h) min{p_j, h} and d = θ(h) − h θ'(h).
    """
    if h < 0.0:
        raise ProfileError(f"Scheduling level must be nonnegative, got {h}")
    p = np.asarray(sizes, dtype=float)
    theta_h = float(theta(h))
    slope = float(theta.prime(h))
    above = np.where(p > h, theta(p) - theta_h, 0.0)
    return above + slope * np.minimum(p, h), theta_h - h * slope


def f_nsw(profile: ValueMassProfile) -> float:
    """Concave NSW water-fill function f_i(x_i)."""
    h = water_level(profile, LevelConvention.MIN_SUPPORT_VALUE)
    v, x = profile.values, profile.masses
    above = v > h
    return float(np.dot(x[above], np.log(v[above] / h)) + np.log(h))


def g_nsw(profile: ValueMassProfile, h: float) -> float:
    """Linearization g_i(x_i, h) of the NSW function; g >= f for every h > 0."""
    c, d = nsw_cut(profile.values, h)
    return float(np.dot(c, profile.masses) + d)


def _grid_levels(grid: Grid) -> np.ndarray:
    if len(grid) == 0:
        raise GridError("Grid is empty")
    return grid.levels


def f_bar_nsw(profile: ValueMassProfile, grid: Grid) -> float:
    """Discretized surrogate min_{h ∈ H} g_nsw; f <= f̄ < f + ln(1+ε)."""
    levels = _grid_levels(grid)
    v, x = profile.values[None, :], profile.masses
    h = levels[:, None]
    coefficients = np.where(v > h, np.log(np.maximum(v, h) / h), 0.0) + np.minimum(v, h) / h
    scores = coefficients @ x + np.log(levels) - 1.0
    return float(scores.min())


def f_theta(profile: ValueMassProfile, theta: ThetaSpec) -> float:
    """Convex scheduling water-fill function f_i(x_i)."""
    h = water_level(profile, LevelConvention.ZERO)
    p, x = profile.values, profile.masses
    theta_h = float(theta(h))
    above = p > h
    return float(np.dot(x[above], theta(p[above]) - theta_h) + theta_h)


def g_theta(profile: ValueMassProfile, h: float, theta: ThetaSpec) -> float:
    """Linearization g_i(x_i, h) of the scheduling function; g <= f for every h >= 0."""
    c, d = theta_cut(profile.values, h, theta)
    return float(np.dot(c, profile.masses) + d)


def f_bar_theta(profile: ValueMassProfile, grid: Grid, theta: ThetaSpec) -> float:
    """Discretized surrogate max_{h ∈ H} g_theta; f(x; 1/(1+ε)) <= f̄ <= f."""
    levels = _grid_levels(grid)
    p, x = profile.values[None, :], profile.masses
    h = levels[:, None]
    theta_h = theta(levels)
    slopes = theta.prime(levels)
    coefficients = np.where(p > h, theta(p) - theta_h[:, None], 0.0) + slopes[:, None] * np.minimum(p, h)
    scores = coefficients @ x + theta_h - levels * slopes
    return float(scores.max())
