"""
Group-partition rounding

Splits a fractional assignment into unit groups per player, decomposes the
group/object fractional matching into integral matchings and picks an
allocation from the resulting convex combination.
"""

from .groups import Group, GroupSystem, partition_groups
from .decomposition import MatchingDecomposition, MatchingTerm, decompose
from .selection import (
    RoundingMode,
    RoundingOutcome,
    sample,
    sample_index,
    expected_value,
    best_allocation,
    round_solution,
)

__all__ = [
    'Group',
    'GroupSystem',
    'partition_groups',
    'MatchingDecomposition',
    'MatchingTerm',
    'decompose',
    'RoundingMode',
    'RoundingOutcome',
    'sample',
    'sample_index',
    'expected_value',
    'best_allocation',
    'round_solution',
]
