"""
EF1 for identical agents

EF1 checking, a greedy EF1 allocator, and water-fill certificates bounding
how far an EF1 allocation can be from optimal.
"""

from .identical import EF1_TOL, IdenticalInstance, EF1Check, is_ef1, greedy_ef1, identical_nsw
from .gap import EF1_GAP, GapCertificate, LoadGapCertificate, gap_bound, load_gap_bound

__all__ = [
    'EF1_TOL',
    'IdenticalInstance',
    'EF1Check',
    'is_ef1',
    'greedy_ef1',
    'identical_nsw',
    'EF1_GAP',
    'GapCertificate',
    'LoadGapCertificate',
    'gap_bound',
    'load_gap_bound',
]
