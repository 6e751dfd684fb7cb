"""
Value/mass profiles: one player's row of a fractional assignment.
"""

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..config import FEASIBILITY_TOL, RESIDUAL_TOL, ZERO_MASS_TOL
from ..errors import ProfileError


class ProfileRole(enum.Enum):
    """NSW rows carry values and need mass >= 1; scheduling rows carry sizes."""
    NSW = 'nsw'
    SCHED = 'sched'


class LevelConvention(enum.Enum):
    """Water level returned when the total mass does not exceed one."""
    MIN_SUPPORT_VALUE = 'min_support_value'
    ZERO = 'zero'


@dataclass(frozen=True, eq=False)
class ValueMassProfile:
    """
    Pairs (value or size, mass) for a single player.

    Attributes:
        values: Positive values v_j (NSW) or sizes p_j (scheduling)
        masses: Fractions x_j in [0, 1]
        role: Semantic role of the profile
    """
    values: np.ndarray
    masses: np.ndarray
    role: ProfileRole = ProfileRole.NSW

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        masses = np.array(self.masses, dtype=float).ravel()
        if values.shape != masses.shape:
            raise ProfileError(f"Got {values.size} values but {masses.size} masses")
        if values.size and (not np.all(np.isfinite(values)) or np.any(values <= 0.0)):
            raise ProfileError("Profile values must be finite and positive")
        if masses.size and (np.any(masses < -FEASIBILITY_TOL) or np.any(masses > 1.0 + FEASIBILITY_TOL)):
            raise ProfileError("Profile masses must lie in [0, 1]")
        masses = np.clip(masses, 0.0, 1.0)
        masses[masses < ZERO_MASS_TOL] = 0.0
        if self.role is ProfileRole.NSW and masses.sum() < 1.0 - RESIDUAL_TOL:
            raise ProfileError(f"NSW profile needs total mass at least 1, got {masses.sum():.12g}")
        values.flags.writeable = False
        masses.flags.writeable = False
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'masses', masses)

    @classmethod
    def nsw(cls, values: Iterable[float], masses: Iterable[float]) -> 'ValueMassProfile':
        return cls(np.asarray(list(values), dtype=float), np.asarray(list(masses), dtype=float), ProfileRole.NSW)

    @classmethod
    def sched(cls, sizes: Iterable[float], masses: Iterable[float]) -> 'ValueMassProfile':
        return cls(np.asarray(list(sizes), dtype=float), np.asarray(list(masses), dtype=float), ProfileRole.SCHED)

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    @property
    def support(self) -> np.ndarray:
        """Boolean mask of entries with positive mass."""
        return self.masses > 0.0

    def min_support_value(self) -> Optional[float]:
        support = self.support
        if not np.any(support):
            return None
        return float(self.values[support].min())

    def scaled(self, factor: float) -> 'ValueMassProfile':
        """Same masses, values multiplied by `factor`."""
        return ValueMassProfile(self.values * factor, self.masses, self.role)
