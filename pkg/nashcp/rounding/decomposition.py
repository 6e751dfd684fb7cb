"""
Matching Decomposition

This module splits the group/object fractional matching into a convex
combination of integral matchings:
1. Each round finds, on the current support, an integral matching that covers
   every object and every saturated group (augmenting paths started from the
   saturated groups first, then from unmatched objects; an augmenting path
   never unmatches a vertex)
2. The matching is peeled with the largest λ that keeps residual masses
   nonnegative and keeps every unmatched group's degree within the remaining
   total mass
3. Every round removes a support edge or makes a new group saturated, so the
   number of terms is bounded by edges plus groups

Peeling stops once the remaining mass is within the feasibility tolerance;
weights are then renormalized to sum to one.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Set, Tuple

import numpy as np
import structlog

from .groups import GroupSystem
from ..config import FEASIBILITY_TOL, RESIDUAL_TOL, ZERO_MASS_TOL
from ..errors import DecompositionError
from ..model import Allocation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class MatchingTerm:
    """λ_k with its matching (group key -> object) and induced allocation."""
    weight: float
    matching: Mapping[str, str]
    allocation: Allocation


@dataclass(frozen=True)
class MatchingDecomposition:
    terms: Tuple[MatchingTerm, ...]
    groups: GroupSystem

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def weights(self) -> np.ndarray:
        return np.array([t.weight for t in self.terms], dtype=float)

    def marginals(self) -> Dict[Tuple[str, str], float]:
        """Σ_k λ_k [term k sends object j to player i], keyed by (player, object)."""
        result: Dict[Tuple[str, str], float] = {}
        for term in self.terms:
            for obj, player in term.allocation.items():
                result[(player, obj)] = result.get((player, obj), 0.0) + term.weight
        return result


class _CoveringSearch:
    """Kuhn-style augmenting paths on the current support."""

    def __init__(self, group_adjacency: Dict[str, List[str]], object_adjacency: Dict[str, List[str]]):
        self.group_adjacency = group_adjacency
        self.object_adjacency = object_adjacency
        self.group_match: Dict[str, str] = {}
        self.object_match: Dict[str, str] = {}

    def _from_group(self, group: str, seen: Set[str]) -> bool:
        for obj in self.group_adjacency.get(group, []):
            if obj in seen:
                continue
            seen.add(obj)
            holder = self.object_match.get(obj)
            if holder is None or self._from_group(holder, seen):
                self.object_match[obj] = group
                self.group_match[group] = obj
                return True
        return False

    def _from_object(self, obj: str, seen: Set[str]) -> bool:
        for group in self.object_adjacency.get(obj, []):
            if group in seen:
                continue
            seen.add(group)
            holder = self.group_match.get(group)
            if holder is None or self._from_object(holder, seen):
                self.group_match[group] = obj
                self.object_match[obj] = group
                return True
        return False

    def cover(self, required_groups: List[str], objects: List[str]) -> Optional[Dict[str, str]]:
        for group in required_groups:
            if group not in self.group_match and not self._from_group(group, set()):
                return None
        for obj in objects:
            if obj not in self.object_match and not self._from_object(obj, set()):
                return None
        return dict(self.group_match)


def decompose(system: GroupSystem) -> MatchingDecomposition:
    """
    Decompose a group system into a convex combination of integral matchings.

    Args:
        system: Output of partition_groups

    Returns:
        MatchingDecomposition whose marginals reproduce x

    Raises:
        DecompositionError: If no covering matching exists (a feasibility bug)
    """
    owner = {g.key: g.player for g in system.groups}
    group_keys = [g.key for g in system.groups]
    saturated = {g.key for g in system.groups if g.saturated}
    objects = system.objects()

    residual: Dict[Tuple[str, str], float] = {}
    for group in system.groups:
        for obj, fraction in group.fractions:
            residual[(group.key, obj)] = residual.get((group.key, obj), 0.0) + fraction

    remaining = 1.0
    raw_terms: List[Tuple[float, Dict[str, str]]] = []
    limit = len(residual) + len(group_keys) + 2
    while remaining > FEASIBILITY_TOL:
        if len(raw_terms) >= limit:
            raise DecompositionError(f"Decomposition exceeded {limit} terms")

        group_adjacency: Dict[str, List[str]] = {k: [] for k in group_keys}
        object_adjacency: Dict[str, List[str]] = {o: [] for o in objects}
        degree = {k: 0.0 for k in group_keys}
        for (group, obj), mass in sorted(residual.items()):
            group_adjacency[group].append(obj)
            object_adjacency[obj].append(group)
            degree[group] += mass
        order = {k: i for i, k in enumerate(group_keys)}
        for obj in objects:
            object_adjacency[obj].sort(key=order.__getitem__)

        required = [k for k in group_keys if k in saturated or degree[k] >= remaining - RESIDUAL_TOL]
        matching = _CoveringSearch(group_adjacency, object_adjacency).cover(required, objects)
        if matching is None:
            raise DecompositionError(
                f"No matching covers all objects and saturated groups (remaining mass {remaining:.3g})"
            )

        step = min(residual[(group, obj)] for group, obj in matching.items())
        for group in group_keys:
            if group not in matching:
                step = min(step, remaining - degree[group])
        step = min(step, remaining)
        if step <= 0.0:
            raise DecompositionError("Peeling step is not positive")

        for group, obj in matching.items():
            left = residual[(group, obj)] - step
            if left <= ZERO_MASS_TOL:
                del residual[(group, obj)]
            else:
                residual[(group, obj)] = left
        remaining -= step
        raw_terms.append((step, matching))

    total = sum(step for step, _ in raw_terms)
    terms = tuple(
        MatchingTerm(
            weight=step / total,
            matching=matching,
            allocation=Allocation({obj: owner[group] for group, obj in matching.items()}),
        )
        for step, matching in raw_terms
    )
    logger.debug("decomposition_done", terms=len(terms), edges=len(residual), groups=len(group_keys))
    return MatchingDecomposition(terms, system)
