"""
Instance file reading and writing.

Files are UTF-8 JSON. NSW:
    {"agents": [{"id": "a1", "weight": 0.5}], "items": ["j1"], "values": [["a1", "j1", 3.0]]}
Scheduling:
    {"machines": [...], "jobs": [...], "p": [[...]], "objective": {"kind": "lk", "k": 2}}
Omitted (agent, item) pairs mean no edge.
"""

import json
from pathlib import Path
from typing import Any, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from ..errors import InstanceError, InstanceParseError
from ..model import NswInstance, SchedInstance, SchedObjective, ensure_valid


class AgentModel(BaseModel):
    id: str = Field(..., description="Agent identifier")
    weight: float = Field(..., description="Agent weight w_i")


class NswFileModel(BaseModel):
    agents: List[AgentModel] = Field(..., description="Agents with weights summing to one")
    items: List[str] = Field(..., description="Item identifiers")
    values: List[Tuple[str, str, float]] = Field(..., description="(agent, item, value) edges")


class ObjectiveModel(BaseModel):
    kind: str = Field('lk', description="'lk', 'l2' or 'completion'")
    k: float = Field(2.0, description="Load exponent for 'lk'")


class SchedFileModel(BaseModel):
    machines: List[str] = Field(..., description="Machine identifiers")
    jobs: List[str] = Field(..., description="Job identifiers")
    p: List[List[float]] = Field(..., description="Processing times, one row per machine")
    objective: ObjectiveModel = Field(default_factory=ObjectiveModel, description="Objective to minimize")


def _read_json(path: Path) -> Any:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise InstanceError(f"Cannot read instance file {path}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"Malformed JSON in {path}: {e.msg}", e.lineno, e.colno)


def _validation_message(error: ValidationError) -> List[str]:
    return [f"{'.'.join(str(p) for p in item['loc']) or 'file'}: {item['msg']}" for item in error.errors()]


def load_nsw_instance(path: Path) -> NswInstance:
    """
    Read and validate an NSW instance file.

    Raises:
        InstanceParseError: If the file is not valid JSON
        InstanceError: If the layout or the instance itself is invalid
    """
    data = _read_json(path)
    try:
        model = NswFileModel.model_validate(data)
    except ValidationError as e:
        problems = _validation_message(e)
        raise InstanceError(f"Invalid NSW instance file {path}: {'; '.join(problems)}", problems)
    instance = NswInstance.from_dict(model.model_dump())
    ensure_valid(instance)
    return instance


def load_sched_instance(path: Path, objective: Optional[SchedObjective] = None) -> SchedInstance:
    """
    Read and validate a scheduling instance file.

    Args:
        path: Instance file
        objective: Overrides the objective stored in the file

    Raises:
        InstanceParseError: If the file is not valid JSON
        InstanceError: If the layout or the instance itself is invalid
    """
    data = _read_json(path)
    try:
        model = SchedFileModel.model_validate(data)
    except ValidationError as e:
        problems = _validation_message(e)
        raise InstanceError(f"Invalid scheduling instance file {path}: {'; '.join(problems)}", problems)
    instance = SchedInstance.from_dict(model.model_dump())
    if objective is not None:
        instance = instance.with_objective(objective)
    ensure_valid(instance)
    return instance


def instance_to_json(instance: Union[NswInstance, SchedInstance]) -> str:
    """Stable JSON text for an instance; equal instances give identical bytes."""
    return json.dumps(instance.to_dict(), indent=2) + '\n'
