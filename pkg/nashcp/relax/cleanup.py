"""Support cleanup for LP solutions."""

from collections import defaultdict
from typing import Dict, Mapping, Tuple

from ..config import PRUNE_TOL
from ..errors import InvariantError
from ..model import FractionalAssignment


def clean_assignment(raw: Mapping[Tuple[str, str], float]) -> FractionalAssignment:
    """
    Prune entries below PRUNE_TOL and renormalize every object's column to one.

    Args:
        raw: (player, object) -> LP value

    Returns:
        Assignment with Σ_i x_ij = 1 for every object in `raw`
    """
    columns: Dict[str, Dict[str, float]] = defaultdict(dict)
    for (player, obj), value in raw.items():
        columns[obj][player] = min(max(float(value), 0.0), 1.0)

    cleaned: Dict[Tuple[str, str], float] = {}
    for obj, column in columns.items():
        kept = {p: v for p, v in column.items() if v >= PRUNE_TOL}
        total = sum(kept.values())
        if total <= 0.0:
            raise InvariantError(f"Object {obj} lost all of its mass during cleanup")
        for player, value in kept.items():
            cleaned[(player, obj)] = value / total
    return FractionalAssignment(cleaned)
