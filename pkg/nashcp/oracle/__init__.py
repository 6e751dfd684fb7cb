"""
Exact oracles

Brute-force optimum search, vertex enumeration for tiny LPs and bisection
water levels, used as ground truth in tests and verification suites.
"""

from .brute import (
    brute_nsw_opt,
    brute_sched_opt,
    enumerate_ef1,
    brute_identical_opt,
    brute_identical_sched_opt,
)
from .lp_vertices import VertexResult, brute_lp_opt
from .bisection import bisect_level, bisect_water_level

__all__ = [
    'brute_nsw_opt',
    'brute_sched_opt',
    'enumerate_ef1',
    'brute_identical_opt',
    'brute_identical_sched_opt',
    'VertexResult',
    'brute_lp_opt',
    'bisect_level',
    'bisect_water_level',
]
