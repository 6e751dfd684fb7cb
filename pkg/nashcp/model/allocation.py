"""
Allocations and fractional assignments.

Both map objects (items or jobs) to players (agents or machines). They are
immutable mappings so they can be shared freely between rounding terms.
"""

from collections.abc import Mapping
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, List, Tuple


class Allocation(Mapping):
    """An integral allocation: object -> player."""

    def __init__(self, assignment: Mapping):
        self._assignment = MappingProxyType(dict(assignment))

    def __getitem__(self, obj: str) -> str:
        return self._assignment[obj]

    def __iter__(self) -> Iterator[str]:
        return iter(self._assignment)

    def __len__(self) -> int:
        return len(self._assignment)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Allocation):
            return dict(self._assignment) == dict(other._assignment)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._assignment.items()))

    def __repr__(self) -> str:
        return f"Allocation({dict(self._assignment)!r})"

    def bundle(self, player: str) -> Tuple[str, ...]:
        return tuple(obj for obj, owner in self._assignment.items() if owner == player)

    def bundles(self, players: Iterable[str]) -> Dict[str, List[str]]:
        """Bundles keyed by player; every listed player appears, possibly empty."""
        result: Dict[str, List[str]] = {p: [] for p in players}
        for obj, owner in self._assignment.items():
            result.setdefault(owner, []).append(obj)
        return result

    def to_dict(self) -> Dict[str, str]:
        return dict(self._assignment)

    @classmethod
    def from_dict(cls, data: Mapping) -> 'Allocation':
        return cls({str(k): str(v) for k, v in data.items()})


class FractionalAssignment(Mapping):
    """
    A sparse fractional assignment x: (player, object) -> x_ij in [0, 1].

    Zero entries are not stored.
    """

    def __init__(self, entries: Mapping):
        cleaned = {(str(p), str(o)): float(v) for (p, o), v in entries.items() if v != 0.0}
        self._entries = MappingProxyType(cleaned)

    def __getitem__(self, key: Tuple[str, str]) -> float:
        return self._entries[key]

    def __iter__(self) -> Iterator[Tuple[str, str]]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"FractionalAssignment({dict(self._entries)!r})"

    def get_mass(self, player: str, obj: str) -> float:
        return self._entries.get((player, obj), 0.0)

    def row(self, player: str) -> Dict[str, float]:
        return {o: v for (p, o), v in self._entries.items() if p == player}

    def column(self, obj: str) -> Dict[str, float]:
        return {p: v for (p, o), v in self._entries.items() if o == obj}

    def player_mass(self, player: str) -> float:
        return sum(v for (p, _), v in self._entries.items() if p == player)

    def object_mass(self, obj: str) -> float:
        return sum(v for (_, o), v in self._entries.items() if o == obj)

    def support(self) -> List[Tuple[str, str]]:
        return sorted(self._entries)

    @classmethod
    def from_allocation(cls, allocation: Allocation) -> 'FractionalAssignment':
        """0/1 encoding of an integral allocation."""
        return cls({(player, obj): 1.0 for obj, player in allocation.items()})

    def to_dict(self) -> List[List[Any]]:
        return [[p, o, v] for (p, o), v in sorted(self._entries.items())]

    @classmethod
    def from_dict(cls, data: Iterable) -> 'FractionalAssignment':
        return cls({(str(p), str(o)): float(v) for p, o, v in data})
