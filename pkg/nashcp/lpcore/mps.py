"""
Fixed-format MPS export.

Names are replaced by 8-character generated names (C0000001, R0000001) so the
fixed column layout always holds; a comment block maps them back.
"""

import math
from typing import List, TextIO

from .model import ConstraintSense, LpModel, ObjectiveSense

_ROW_TYPES = {ConstraintSense.LE: 'L', ConstraintSense.GE: 'G', ConstraintSense.EQ: 'E'}


def _number(value: float) -> str:
    for digits in range(12, 0, -1):
        text = format(value, f'.{digits}g')
        if len(text) <= 12:
            return text
    return format(value, '.1e')


def _field_line(code: str, name1: str, name2: str = '', value: float = None) -> str:
    line = f" {code:<2} {name1:<8}  {name2:<8}"
    if value is not None:
        line += f"  {_number(value):>12}"
    return line.rstrip()


def write_mps(model: LpModel, stream: TextIO) -> None:
    """Write `model` to `stream` in fixed MPS format."""
    columns = [f"C{i + 1:07d}" for i in range(model.num_variables)]
    rows = [f"R{i + 1:07d}" for i in range(model.num_constraints)]
    lines: List[str] = [f"* model {model.name}"]
    lines += [f"* {short} {var.name}" for short, var in zip(columns, model.variables)]
    lines += [f"* {short} {con.name}" for short, con in zip(rows, model.constraints)]
    lines.append(f"NAME          {model.name[:8].upper() or 'LP'}")
    if model.sense is ObjectiveSense.MAXIMIZE:
        lines += ['OBJSENSE', '    MAX']

    lines.append('ROWS')
    lines.append(' N  COST')
    for short, con in zip(rows, model.constraints):
        lines.append(f" {_ROW_TYPES[con.sense]}  {short}")

    entries: List[List[tuple]] = [[] for _ in range(model.num_variables)]
    for index, coefficient in enumerate(model.objective):
        if coefficient != 0.0:
            entries[index].append(('COST', coefficient))
    for short, con in zip(rows, model.constraints):
        for index, coefficient in con.coefficients:
            entries[index].append((short, coefficient))

    lines.append('COLUMNS')
    for short, column in zip(columns, entries):
        if not column:
            lines.append(_field_line('', short, 'COST', 0.0))
        for row_name, coefficient in column:
            lines.append(_field_line('', short, row_name, coefficient))

    lines.append('RHS')
    for short, con in zip(rows, model.constraints):
        if con.rhs != 0.0:
            lines.append(_field_line('', 'RHS', short, con.rhs))

    lines.append('BOUNDS')
    for short, var in zip(columns, model.variables):
        lo, hi = var.lower, var.upper
        if lo == hi:
            lines.append(_field_line('FX', 'BND', short, lo))
            continue
        if not math.isfinite(lo) and not math.isfinite(hi):
            lines.append(_field_line('FR', 'BND', short))
            continue
        if not math.isfinite(lo):
            lines.append(_field_line('MI', 'BND', short))
        elif lo != 0.0:
            lines.append(_field_line('LO', 'BND', short, lo))
        if math.isfinite(hi):
            lines.append(_field_line('UP', 'BND', short, hi))
    lines.append('ENDATA')
    stream.write('\n'.join(lines) + '\n')
