"""
Approximation Constants

This module evaluates the approximation constants of the scheduling roundings:
1. α(k) = sup over t ∈ (0,1), y ∈ (0,1] of
       (t(1 + y(1−t))^k + (1−t)(y(1−t))^k) / (t + (1−t)y^k)
   for the power-load objective Σ load^k, by a cell-centred grid search
   followed by Nelder-Mead refinement from the best cell
2. The completion-time constant (1+√2)/2 together with a numeric certificate
   that the two-variable bound expression is nonpositive on its triangle
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict

import numpy as np
import structlog
from scipy.optimize import minimize

from ..errors import ProfileError

logger = structlog.get_logger(__name__)

DEFAULT_RESOLUTION = 512
CERTIFICATE_POINTS = 10_000
CERTIFICATE_TOL = 1e-9
COMPLETION_ALPHA = (1.0 + math.sqrt(2.0)) / 2.0

# Keeps refinement iterates inside the open t-interval
_T_MARGIN = 1e-12


@dataclass(frozen=True)
class AlphaResult:
    """
    Numeric supremum of the power-load ratio.

    Attributes:
        k: Load exponent
        alpha: Best ratio found
        t: Maximizing t in (0, 1)
        y: Maximizing y in (0, 1]
        resolution: Grid points per axis
        iterations: Nelder-Mead iterations spent refining
    """
    k: float
    alpha: float
    t: float
    y: float
    resolution: int
    iterations: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'alpha': self.alpha,
            't': self.t,
            'y': self.y,
            'resolution': self.resolution,
            'iterations': self.iterations,
        }


def alpha_objective(k: float, t, y):
    """Ratio inside the α supremum, vectorized over t and y."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    rest = 1.0 - t
    numerator = t * (1.0 + y * rest) ** k + rest * (y * rest) ** k
    denominator = t + rest * y ** k
    return numerator / denominator


def _clip(point: np.ndarray) -> np.ndarray:
    return np.array([
        min(max(point[0], _T_MARGIN), 1.0 - _T_MARGIN),
        min(max(point[1], _T_MARGIN), 1.0),
    ])


@lru_cache(maxsize=32)
def compute_alpha_power(k: float, resolution: int = DEFAULT_RESOLUTION) -> AlphaResult:
    """
    Evaluate α(k) for θ(t) = t^k.

    Args:
        k: Load exponent, at least 1
        resolution: Grid points per axis before refinement

    Returns:
        AlphaResult with the best value and its argument

    Raises:
        ProfileError: If k < 1 or the resolution is not positive
    """
    if not k >= 1.0:
        raise ProfileError(f"alpha is defined for k >= 1, got {k}")
    if resolution < 1:
        raise ProfileError(f"Resolution must be positive, got {resolution}")

    ts = (np.arange(resolution) + 0.5) / resolution
    ys = (np.arange(resolution) + 1.0) / resolution
    grid = alpha_objective(k, ts[:, None], ys[None, :])
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    best_value = float(grid[i, j])
    best_point = np.array([ts[i], ys[j]])

    refined = minimize(
        lambda z: -float(alpha_objective(k, *_clip(z))),
        best_point,
        method='Nelder-Mead',
        options={'xatol': 1e-12, 'fatol': 1e-14, 'maxiter': 4000},
    )
    candidate = _clip(refined.x)
    candidate_value = float(alpha_objective(k, *candidate))
    if candidate_value > best_value:
        best_value, best_point = candidate_value, candidate

    logger.debug("alpha_power", k=k, alpha=best_value, t=best_point[0], y=best_point[1], nit=refined.nit)
    return AlphaResult(
        k=float(k),
        alpha=best_value,
        t=float(best_point[0]),
        y=float(best_point[1]),
        resolution=resolution,
        iterations=int(refined.nit),
    )


def completion_bound(alpha: float, a, b):
    """
    Upper bound on 2(cost − α·opt)/(m h²) in terms of a = ψ/h and b = m₁/m.

    Nonpositive for a, b >= 0 and a + b <= 1 exactly when α >= (1+√2)/2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return (
        (2.0 * alpha - 1.0) / (2.0 * (alpha - 1.0)) * a * a * b
        + (1.0 - b - a) * ((1.0 + a) ** 2 - (alpha - 1.0))
        + a ** 3
        - alpha * (1.0 - b)
    )


@dataclass(frozen=True)
class CompletionCertificate:
    """
    The completion-time constant with the maxima of its bound expression.

    Attributes:
        alpha: (1+√2)/2
        edge_b0_max: max over a of −a² + αa − 2(α−1)  (the b = 0 edge)
        edge_diagonal_max: max over a of −a² + (2α−1)a − 2α(α−1)  (the b = 1−a edge)
        triangle_max: max of completion_bound over a triangular grid
        points: Grid points per axis
    """
    alpha: float
    edge_b0_max: float
    edge_diagonal_max: float
    triangle_max: float
    points: int

    @property
    def holds(self) -> bool:
        return max(self.edge_b0_max, self.edge_diagonal_max, self.triangle_max) <= CERTIFICATE_TOL

    def to_dict(self) -> Dict[str, Any]:
        return {
            'alpha': self.alpha,
            'edge_b0_max': self.edge_b0_max,
            'edge_diagonal_max': self.edge_diagonal_max,
            'triangle_max': self.triangle_max,
            'points': self.points,
            'pass': self.holds,
        }


def completion_alpha(points: int = CERTIFICATE_POINTS) -> CompletionCertificate:
    """
    Return (1+√2)/2 with a numeric certificate on an a-grid of `points` values.

    The triangle is sampled on a coarser √points × √points lattice.
    """
    alpha = COMPLETION_ALPHA
    a = np.linspace(0.0, 1.0, points)
    edge_b0 = -a * a + alpha * a - 2.0 * (alpha - 1.0)
    edge_diagonal = -a * a + (2.0 * alpha - 1.0) * a - 2.0 * alpha * (alpha - 1.0)

    side = max(2, int(math.isqrt(points)))
    aa, bb = np.meshgrid(np.linspace(0.0, 1.0, side), np.linspace(0.0, 1.0, side), indexing='ij')
    inside = aa + bb <= 1.0
    triangle = completion_bound(alpha, aa[inside], bb[inside])
    diagonal = completion_bound(alpha, a, 1.0 - a)
    return CompletionCertificate(
        alpha=alpha,
        edge_b0_max=float(edge_b0.max()),
        edge_diagonal_max=float(edge_diagonal.max()),
        triangle_max=float(max(triangle.max(), diagonal.max(), completion_bound(alpha, a, 0.0).max())),
        points=points,
    )
