"""
Fisher market view

The spending-restricted Fisher program for unweighted instances: its
objective, the construction from a CP(NSW) assignment, and equivalence checks.
"""

from .fsr import UNWEIGHTED_ONLY, FsrSolution, fsr_objective, construct_from_x, allocation_to_fsr
from .equivalence import (
    EquivalenceReport,
    equivalence_report,
    equivalence_from_solution,
    integrality_gap_family,
    shared_items_family,
)

__all__ = [
    'UNWEIGHTED_ONLY',
    'FsrSolution',
    'fsr_objective',
    'construct_from_x',
    'allocation_to_fsr',
    'EquivalenceReport',
    'equivalence_report',
    'equivalence_from_solution',
    'integrality_gap_family',
    'shared_items_family',
]
