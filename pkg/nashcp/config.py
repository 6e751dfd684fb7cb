"""
Configuration for nashcp.

Settings are read from the environment (optionally seeded from a .env file in
the working directory) into a pydantic model. Numerical tolerances shared by
all modules are defined here and nowhere else.
"""

import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

# Tolerances
FEASIBILITY_TOL = 1e-7
RESIDUAL_TOL = 1e-9
ZERO_MASS_TOL = 1e-12
PRUNE_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-9
PIVOT_TOL = 1e-9
RATIO_PIVOT_TOL = 1e-8

LP_BACKENDS = ('simplex', 'scipy')


class Settings(BaseModel):
    """Runtime settings; CLI flags take precedence over these values."""

    eps: float = Field(default=1e-3, gt=0)
    seed: int = 0
    lp_backend: str = 'simplex'
    log_level: str = 'WARNING'
    log_json: bool = False
    max_grid_points: int = Field(default=200_000, gt=0)
    max_enumeration: int = Field(default=10_000_000, gt=0)

    @field_validator('lp_backend')
    @classmethod
    def _known_backend(cls, value: str) -> str:
        if value not in LP_BACKENDS:
            raise ValueError(f"Unknown LP backend '{value}', expected one of {LP_BACKENDS}")
        return value

    @field_validator('log_level')
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


def _env_flag(name: str, default: bool = False) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() in ('1', 'true', 'yes', 'on')


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once per process."""
    load_dotenv(Path.cwd() / '.env')
    return Settings(
        eps=float(os.environ.get('NASHCP_EPS', 1e-3)),
        seed=int(os.environ.get('NASHCP_SEED', 0)),
        lp_backend=os.environ.get('NASHCP_LP_BACKEND', 'simplex'),
        log_level=os.environ.get('NASHCP_LOG_LEVEL', 'WARNING'),
        log_json=_env_flag('NASHCP_LOG_JSON'),
        max_grid_points=int(os.environ.get('NASHCP_MAX_GRID_POINTS', 200_000)),
        max_enumeration=int(os.environ.get('NASHCP_MAX_ENUMERATION', 10_000_000)),
    )
