"""Fractional solutions returned by the relaxations."""

from dataclasses import dataclass, field
from typing import Any, Dict

from ..model import FractionalAssignment


@dataclass(frozen=True)
class FractionalSolution:
    """
    Result of solving a compact relaxation.

    Attributes:
        kind: 'nsw', 'theta' or 'completion'
        x: Cleaned fractional assignment
        value: LP objective (Σ w_i f̄_i, Σ f̄_i, or ½(Σ f̄_i + Σ x p²))
        levels: Water level h_i of every player, recomputed from x
        eps: Grid precision used
        grid_sizes: |H_i| per player
        iterations: Total LP pivots
        rounds: Row-generation rounds
    """
    kind: str
    x: FractionalAssignment
    value: float
    levels: Dict[str, float]
    eps: float
    grid_sizes: Dict[str, int] = field(default_factory=dict)
    iterations: int = 0
    rounds: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'x': self.x.to_dict(),
            'value': self.value,
            'levels': dict(self.levels),
            'eps': self.eps,
            'grid_sizes': dict(self.grid_sizes),
            'iterations': self.iterations,
            'rounds': self.rounds,
        }
