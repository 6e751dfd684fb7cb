"""
Water-filling levels and functions

The water level h_i, the concave (NSW) and convex (scheduling) functions f_i,
their linearizations g_i, and the grid-discretized surrogates f̄_i.
"""

from .profiles import ProfileRole, LevelConvention, ValueMassProfile
from .levels import solve_level, level_residual, water_level
from .theta import ThetaSpec, power_theta
from .grids import Grid, nsw_grid, sched_grid
from .functions import (
    nsw_cut,
    theta_cut,
    f_nsw,
    g_nsw,
    f_bar_nsw,
    f_theta,
    g_theta,
    f_bar_theta,
)

__all__ = [
    'ProfileRole',
    'LevelConvention',
    'ValueMassProfile',
    'solve_level',
    'level_residual',
    'water_level',
    'ThetaSpec',
    'power_theta',
    'Grid',
    'nsw_grid',
    'sched_grid',
    'nsw_cut',
    'theta_cut',
    'f_nsw',
    'g_nsw',
    'f_bar_nsw',
    'f_theta',
    'g_theta',
    'f_bar_theta',
]
