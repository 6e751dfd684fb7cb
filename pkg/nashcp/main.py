"""
nashcp command-line interface.

Reports are written to stdout as JSON and a short human summary goes to
stderr. Exit codes: 0 success, 1 input error, 2 infeasible relaxation,
3 property failure.
"""

import enum
import sys
from pathlib import Path
from typing import Callable, Optional

import typer
from pydantic import BaseModel

from .commands import (
    Suite,
    WeightScheme,
    generate_nsw,
    generate_sched,
    instance_to_json,
    load_nsw_instance,
    load_sched_instance,
    run_solve_nsw,
    run_solve_sched,
    run_verify,
)
from .config import get_settings
from .errors import InfeasibleError, InvariantError, NashCPError
from .fisher import integrality_gap_family
from .logging_setup import configure_logging
from .lpcore import get_backend
from .model import SchedObjective
from .rounding import RoundingMode

EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_PROPERTY = 3

app = typer.Typer(
    name='nashcp',
    help="Compact convex relaxations for Nash social welfare and load scheduling.",
    add_completion=False,
    no_args_is_help=True,
)


class RoundChoice(str, enum.Enum):
    BEST = 'best'
    SAMPLE = 'sample'


class InstanceKind(str, enum.Enum):
    NSW = 'nsw'
    SCHED = 'sched'
    GAP = 'gap'


def _emit(report: BaseModel, summary: str, passed: bool) -> None:
    typer.echo(report.model_dump_json(indent=2))
    typer.echo(summary, err=True)
    if not passed:
        raise typer.Exit(EXIT_PROPERTY)


def _guarded(action: Callable[[], None]) -> None:
    """Run a command body, mapping library errors onto exit codes."""
    try:
        action()
    except InfeasibleError as e:
        typer.echo(f"infeasible: {e}", err=True)
        raise typer.Exit(EXIT_INFEASIBLE)
    except InvariantError as e:
        typer.echo(f"invariant failure: {e}", err=True)
        raise typer.Exit(EXIT_PROPERTY)
    except NashCPError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)


def _eps(value: Optional[float]) -> float:
    eps = value if value is not None else get_settings().eps
    if not eps > 0.0:
        typer.echo(f"error: --eps must be positive, got {eps}", err=True)
        raise typer.Exit(EXIT_INPUT)
    return eps


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, '--log-level', help="DEBUG, INFO, WARNING or ERROR"),
    log_json: Optional[bool] = typer.Option(None, '--log-json/--log-text', help="Structured JSON log lines"),
) -> None:
    settings = get_settings()
    configure_logging(
        log_level or settings.log_level,
        settings.log_json if log_json is None else log_json,
    )


@app.command('solve-nsw')
def solve_nsw(
    input_path: Path = typer.Option(..., '--input', help="NSW instance JSON file"),
    eps: Optional[float] = typer.Option(None, '--eps', help="Grid precision (default 0.001)"),
    seed: Optional[int] = typer.Option(None, '--seed', help="Seed for --round sample"),
    round_mode: RoundChoice = typer.Option(RoundChoice.BEST, '--round', help="Best term or a seeded sample"),
    dump_lp: Optional[Path] = typer.Option(None, '--dump-lp', help="Write the full LP in MPS format"),
    backend: Optional[str] = typer.Option(None, '--backend', help="simplex or scipy"),
) -> None:
    """Solve CP(NSW), round it and report the certified ratios."""
    def action() -> None:
        instance = load_nsw_instance(input_path)
        report = run_solve_nsw(
            instance,
            _eps(eps),
            seed if seed is not None else get_settings().seed,
            RoundingMode(round_mode.value),
            get_backend(backend),
            dump_lp,
        )
        _emit(report, report.summary(), report.passed)

    _guarded(action)


@app.command('solve-sched')
def solve_sched(
    input_path: Path = typer.Option(..., '--input', help="Scheduling instance JSON file"),
    objective: Optional[str] = typer.Option(None, '--objective', help="l2, lk:K or completion (default: from file)"),
    eps: Optional[float] = typer.Option(None, '--eps', help="Grid precision (default 0.001)"),
    seed: Optional[int] = typer.Option(None, '--seed', help="Seed for --round sample"),
    round_mode: RoundChoice = typer.Option(RoundChoice.BEST, '--round', help="Best term or a seeded sample"),
    dump_lp: Optional[Path] = typer.Option(None, '--dump-lp', help="Write the full LP in MPS format"),
    backend: Optional[str] = typer.Option(None, '--backend', help="simplex or scipy"),
) -> None:
    """Solve the scheduling relaxation, round it and report the α check."""
    def action() -> None:
        override = SchedObjective.parse(objective) if objective else None
        instance = load_sched_instance(input_path, override)
        report = run_solve_sched(
            instance,
            _eps(eps),
            seed if seed is not None else get_settings().seed,
            RoundingMode(round_mode.value),
            get_backend(backend),
            dump_lp,
        )
        _emit(report, report.summary(), report.passed)

    _guarded(action)


@app.command('verify')
def verify(
    suite: Suite = typer.Option(..., '--suite', help="Property suite to run"),
    input_path: Optional[Path] = typer.Option(None, '--input', help="Instance file; a generated sweep otherwise"),
    count: int = typer.Option(20, '--count', min=1, help="Generated instances per sweep"),
    eps: Optional[float] = typer.Option(None, '--eps', help="Grid precision (default 0.001)"),
    seed: int = typer.Option(0, '--seed', help="Seed of the generated sweep"),
    backend: Optional[str] = typer.Option(None, '--backend', help="simplex or scipy"),
) -> None:
    """Run a verification suite; exit 3 if any property fails."""
    def action() -> None:
        report = run_verify(suite, input_path, count, _eps(eps), seed, get_backend(backend))
        _emit(report, report.summary(), report.passed)

    _guarded(action)


@app.command('gen')
def gen(
    kind: InstanceKind = typer.Option(..., '--kind', help="nsw, sched or gap"),
    n: int = typer.Option(..., '--n', min=1, help="Agents (nsw, gap) or jobs (sched)"),
    m: int = typer.Option(1, '--m', min=1, help="Items (nsw) or machines (sched)"),
    seed: int = typer.Option(0, '--seed', help="Generator seed"),
    weights: WeightScheme = typer.Option(WeightScheme.UNIFORM, '--weights', help="uniform or dirichlet"),
    density: float = typer.Option(1.0, '--density', help="Edge keep probability (nsw)"),
    objective: str = typer.Option('l2', '--objective', help="Objective stored in sched files"),
    big: float = typer.Option(4.0, '--big', help="Large item value (gap)"),
    small: Optional[int] = typer.Option(None, '--small', help="Unit items (gap); defaults to n - 1"),
    output: Optional[Path] = typer.Option(None, '--output', help="Write here instead of stdout"),
) -> None:
    """Generate a reproducible instance file."""
    def action() -> None:
        if kind is InstanceKind.NSW:
            instance = generate_nsw(n, m, seed, weights, density)
        elif kind is InstanceKind.SCHED:
            instance = generate_sched(n, m, seed, SchedObjective.parse(objective))
        else:
            instance = integrality_gap_family(n, big, small if small is not None else n - 1)
        text = instance_to_json(instance)
        if output is None:
            typer.echo(text, nl=False)
        else:
            output.write_text(text, encoding='utf-8')

    _guarded(action)


def run() -> None:
    """Console entry point; click usage errors count as input errors."""
    # click itself or the copy typer vendors, whichever typer raises from
    click_errors = sys.modules[typer.BadParameter.__module__]
    try:
        code = app(standalone_mode=False)
    except click_errors.ClickException as e:
        e.show()
        sys.exit(EXIT_INPUT)
    except click_errors.Abort:
        sys.exit(EXIT_INPUT)
    sys.exit(code if isinstance(code, int) else 0)
