#!/usr/bin/env python3

"""JSON wire formats.

Instance::

    {"jobs": [{"p": 2, "delta": 3}, ...], "ml0": 3, "ml_max": 5}

Schedule::

    {"order": [0, 1], "mas": [{"before_position": 1, "duration": 1}]}

Partition::

    {"x": [1, 1, 2]}

Text is parsed with :mod:`json` first, so syntax errors carry a line and
column, then validated by strict :mod:`pydantic` models, so field errors
carry a dotted location such as ``jobs.2.delta``. All failures raise
:class:`~maintsched.errors.InstanceFormatError`.

"""

import json
from typing import Annotated, List

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import InstanceFormatError, SchedulingError
from .model import Instance, MaintenanceActivity, Schedule
from .reduction import PartitionInstance
from .util import U64_MAX

Count = Annotated[int, Field(ge=0, le=U64_MAX)]


class _Strict(BaseModel):
    model_config = ConfigDict(strict=True, extra="forbid", frozen=True)


class JobModel(_Strict):
    p: Count
    delta: Count


class InstanceModel(_Strict):
    jobs: List[JobModel]
    ml0: Count
    ml_max: Count


class MaintenanceModel(_Strict):
    before_position: Count
    duration: Annotated[int, Field(gt=0, le=U64_MAX)]


class ScheduleModel(_Strict):
    order: List[Count]
    mas: List[MaintenanceModel] = Field(default_factory=list)


class PartitionModel(_Strict):
    x: List[int] = Field(..., min_length=1)


def _location(error):
    return ".".join(str(part) for part in error["loc"]) or "<root>"


def _parse(text, model, what):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InstanceFormatError(
            f"{what}: line {err.lineno} column {err.colno}: {err.msg}"
        ) from err
    try:
        return model.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        raise InstanceFormatError(f"{what}: {_location(first)}: {first['msg']}") from err


def loads_instance(text: str) -> Instance:
    """Parse Instance JSON.

    Jobs with ``delta > ml_max`` are accepted here; solvers reject them.

    """
    raw = _parse(text, InstanceModel, "instance")
    try:
        return Instance.from_pairs(((j.p, j.delta) for j in raw.jobs), raw.ml0, raw.ml_max)
    except ValueError as err:
        raise InstanceFormatError(f"instance: {err}") from err


def loads_schedule(text: str) -> Schedule:
    """Parse Schedule JSON."""
    raw = _parse(text, ScheduleModel, "schedule")
    try:
        mas = tuple(MaintenanceActivity(m.before_position, m.duration) for m in raw.mas)
        return Schedule(tuple(raw.order), mas)
    except SchedulingError as err:
        raise InstanceFormatError(f"schedule: {err}") from err


def loads_partition(text: str) -> PartitionInstance:
    """Parse Partition JSON.

    :raises OddSum: if the integers sum to an odd number
    :raises InvalidPartition: if an integer is not positive

    """
    raw = _parse(text, PartitionModel, "partition")
    return PartitionInstance(tuple(raw.x))


####################################################################
# Output
####################################################################


def instance_to_dict(instance: Instance) -> dict:
    return {
        "jobs": [{"p": job.p, "delta": job.delta} for job in instance.jobs],
        "ml0": instance.ml0,
        "ml_max": instance.ml_max,
    }


def schedule_to_dict(schedule: Schedule) -> dict:
    return {
        "order": list(schedule.order),
        "mas": [
            {"before_position": ma.before_position, "duration": ma.duration}
            for ma in schedule.mas
        ],
    }


def evaluation_to_dict(evaluation) -> dict:
    return {
        "completion": list(evaluation.completion),
        "total": evaluation.total,
        "makespan": evaluation.makespan,
        "feasible": evaluation.feasible,
        "first_ma_position": evaluation.first_ma_position,
        "residual_before_first_ma": evaluation.residual_before_first_ma,
    }


def dumps(obj) -> str:
    """Serialize a JSON-ready object with two-space indent and a newline."""
    return json.dumps(obj, indent=2) + "\n"

