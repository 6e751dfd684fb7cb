"""
Compact relaxations

Builders and solvers for the discretized CP(NSW), CP(θ) and completion-time
linear programs, plus helpers that recompute their objectives from x.
"""

from .solution import FractionalSolution
from .cleanup import clean_assignment
from .nsw import (
    NswLp,
    agent_profile,
    build_nsw_lp,
    solve_cp_nsw,
    relaxation_value_nsw,
    concave_value_nsw,
)
from .scheduling import (
    SchedLp,
    machine_profile,
    build_theta_lp,
    build_completion_lp,
    solve_cp_theta,
    solve_cp_completion,
    solve_cp_sched,
    relaxation_value_sched,
    convex_value_sched,
)

__all__ = [
    'FractionalSolution',
    'clean_assignment',
    'NswLp',
    'agent_profile',
    'build_nsw_lp',
    'solve_cp_nsw',
    'relaxation_value_nsw',
    'concave_value_nsw',
    'SchedLp',
    'machine_profile',
    'build_theta_lp',
    'build_completion_lp',
    'solve_cp_theta',
    'solve_cp_completion',
    'solve_cp_sched',
    'relaxation_value_sched',
    'convex_value_sched',
]
