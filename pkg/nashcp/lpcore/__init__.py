"""
Linear programming core

A small LP model builder, a deterministic dense simplex with Bland's rule,
a scipy/HiGHS backend behind the same seam, row generation for models with
many epigraph rows, feasibility checks and MPS export.
"""

from .model import (
    ObjectiveSense,
    ConstraintSense,
    LpStatus,
    LpVariable,
    LpConstraint,
    LpResult,
    LpModel,
)
from .simplex import SimplexSolver
from .backends import LpBackend, ScipyBackend, get_backend, solve_lp
from .rowgen import solve_with_row_generation
from .feasibility import FeasibilityReport, check_feasible
from .mps import write_mps

__all__ = [
    'ObjectiveSense',
    'ConstraintSense',
    'LpStatus',
    'LpVariable',
    'LpConstraint',
    'LpResult',
    'LpModel',
    'SimplexSolver',
    'LpBackend',
    'ScipyBackend',
    'get_backend',
    'solve_lp',
    'solve_with_row_generation',
    'FeasibilityReport',
    'check_feasible',
    'write_mps',
]
