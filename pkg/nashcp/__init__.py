"""
nashcp - Compact convex relaxations for Nash social welfare and scheduling

This package implements a compact convex-programming relaxation for weighted
Nash social welfare, its matching-based rounding, the Fisher-market (f-SR)
construction for the unweighted case, the EF1-gap certificates for identical
agents, and the analogous relaxations for unrelated-machine scheduling.
Every guarantee can be checked against brute-force oracles on small instances.
"""

__version__ = "1.0.0"

from .errors import (
    NashCPError,
    InstanceError,
    InstanceParseError,
    InfeasibleError,
)

__all__ = [
    '__version__',
    'NashCPError',
    'InstanceError',
    'InstanceParseError',
    'InfeasibleError',
]
