"""
Instance and allocation data model

Instances, allocations, fractional assignments, validation and objective
evaluation for both Nash social welfare and scheduling.
"""

from .instances import Agent, Edge, NswInstance, ObjectiveKind, SchedObjective, SchedInstance
from .allocation import Allocation, FractionalAssignment
from .evaluation import bundle_values, nsw_value, log_nsw, machine_loads, sched_cost
from .validation import Violation, validate, ensure_valid
from .sampling import random_feasible_assignment

__all__ = [
    'Agent',
    'Edge',
    'NswInstance',
    'ObjectiveKind',
    'SchedObjective',
    'SchedInstance',
    'Allocation',
    'FractionalAssignment',
    'bundle_values',
    'nsw_value',
    'log_nsw',
    'machine_loads',
    'sched_cost',
    'Violation',
    'validate',
    'ensure_valid',
    'random_feasible_assignment',
]
