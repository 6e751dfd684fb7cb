"""
Command pipelines

Instance files, seeded generators, solve pipelines, verification suites and
the pydantic reports they emit. The typer application in nashcp.main is a
thin layer over these functions.
"""

from .instance_files import load_nsw_instance, load_sched_instance, instance_to_json
from .reports import RatioCheck, SolveReport, VerifyReport, instance_digest
from .generate import WeightScheme, generate_nsw, generate_sched, generate_identical
from .solve import run_solve_nsw, run_solve_sched
from .verify import Suite, run_verify

__all__ = [
    'load_nsw_instance',
    'load_sched_instance',
    'instance_to_json',
    'RatioCheck',
    'SolveReport',
    'VerifyReport',
    'instance_digest',
    'WeightScheme',
    'generate_nsw',
    'generate_sched',
    'generate_identical',
    'run_solve_nsw',
    'run_solve_sched',
    'Suite',
    'run_verify',
]
