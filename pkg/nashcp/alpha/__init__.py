"""
Approximation constants

Numeric α(k) for the power-load roundings and the certified completion-time constant.
"""

from .constants import (
    COMPLETION_ALPHA,
    AlphaResult,
    CompletionCertificate,
    alpha_objective,
    compute_alpha_power,
    completion_bound,
    completion_alpha,
)

__all__ = [
    'COMPLETION_ALPHA',
    'AlphaResult',
    'CompletionCertificate',
    'alpha_objective',
    'compute_alpha_power',
    'completion_bound',
    'completion_alpha',
]
