"""
Group partition of a fractional assignment.

Each player's objects are sorted by non-increasing value (NSW) or size
(scheduling), ties by ascending object id, and the player's fractional mass is
poured into consecutive unit-capacity groups in that order. The result is the
unique system where every group but the last holds mass one and no later
group holds a strictly preferred object that an earlier group lacks.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from ..config import FEASIBILITY_TOL, ZERO_MASS_TOL
from ..errors import ProfileError
from ..model import FractionalAssignment, NswInstance, SchedInstance


@dataclass(frozen=True)
class Group:
    """
    One unit group z^{i,t}.

    Attributes:
        player: Owning agent or machine
        index: Position t (1-based) in the player's order
        fractions: (object, fraction) pairs in the player's order
        saturated: True when the group carries mass one
    """
    player: str
    index: int
    fractions: Tuple[Tuple[str, float], ...]
    saturated: bool

    @property
    def key(self) -> str:
        return f"{self.player}#{self.index}"

    @property
    def size(self) -> float:
        return sum(f for _, f in self.fractions)

    def as_dict(self) -> Dict[str, float]:
        return dict(self.fractions)


@dataclass(frozen=True)
class GroupSystem:
    """All groups, in player order then group index, with each player's object order."""
    groups: Tuple[Group, ...]
    orders: Dict[str, Tuple[str, ...]]

    def groups_of(self, player: str) -> List[Group]:
        return [g for g in self.groups if g.player == player]

    @property
    def players(self) -> Tuple[str, ...]:
        return tuple(self.orders)

    def objects(self) -> List[str]:
        seen: Dict[str, None] = {}
        for group in self.groups:
            for obj, _ in group.fractions:
                seen.setdefault(obj, None)
        return sorted(seen)


def _preference_order(instance: Union[NswInstance, SchedInstance], player: str, objects: List[str]) -> List[str]:
    if isinstance(instance, NswInstance):
        weight = {j: instance.values[(player, j)] for j in objects}
    else:
        weight = {j: instance.size(player, j) for j in objects}
    return sorted(objects, key=lambda j: (-weight[j], j))


def _pour(player: str, order: List[str], row: Dict[str, float]) -> List[Group]:
    groups: List[Group] = []
    current: List[Tuple[str, float]] = []
    filled = 0.0
    for obj in order:
        remaining = row[obj]
        while remaining > 0.0:
            take = min(remaining, 1.0 - filled)
            if remaining - take <= ZERO_MASS_TOL:
                take = remaining
            current.append((obj, take))
            filled += take
            remaining -= take
            if filled >= 1.0 - ZERO_MASS_TOL:
                groups.append(Group(player, len(groups) + 1, tuple(current), True))
                current, filled = [], 0.0
    if current:
        groups.append(Group(player, len(groups) + 1, tuple(current), filled >= 1.0 - FEASIBILITY_TOL))
    return groups


def partition_groups(x: FractionalAssignment, instance: Union[NswInstance, SchedInstance]) -> GroupSystem:
    """
    Partition every player's fractional mass into ordered unit groups.

    Args:
        x: Feasible fractional assignment
        instance: The instance x belongs to (supplies the orders)

    Returns:
        The unique GroupSystem for x

    Raises:
        ProfileError: If an NSW agent has mass below one
    """
    players = instance.agent_ids if isinstance(instance, NswInstance) else instance.machines
    groups: List[Group] = []
    orders: Dict[str, Tuple[str, ...]] = {}
    for player in players:
        row = {obj: v for obj, v in x.row(player).items() if v > 0.0}
        total = sum(row.values())
        if isinstance(instance, NswInstance) and total < 1.0 - FEASIBILITY_TOL:
            raise ProfileError(f"Agent {player} has fractional mass {total:.9g} < 1")
        order = _preference_order(instance, player, list(row))
        orders[player] = tuple(order)
        groups.extend(_pour(player, order, row))
    return GroupSystem(tuple(groups), orders)
