#!/usr/bin/env python3

"""Jobs, instances and schedules for a single machine with partial maintenance.

A machine starts at maintenance level ``ml0``. Processing a job lowers the
level by the job's ``delta``; the level must never drop below zero. A
maintenance activity (MA) of duration ``D`` raises the level by ``D`` (one
level unit per time unit) and may not push it above ``ml_max``.

The canonical schedule on a job order places every MA as late as possible
with the smallest duration that keeps the machine running: before the
``i``-th job the accumulated maintenance equals
``max(0, sum(delta of first i jobs) - ml0)``. Because of this, the
completion time of a job depends only on the *set* of jobs before it.

"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import (
    InfeasibleJob,
    InvalidPermutation,
    MalformedSchedule,
)
from .util import checked

log = logging.getLogger(__name__)


####################################################################
# Domain types
####################################################################


@dataclass(frozen=True)
class Job:
    """A job with processing time ``p`` and machine deterioration ``delta``."""

    p: int
    delta: int

    def __post_init__(self):
        if self.p < 0 or self.delta < 0:
            raise ValueError(f"job needs p >= 0 and delta >= 0, got ({self.p}, {self.delta})")
        checked(self.p, "processing time")
        checked(self.delta, "deterioration")

    @property
    def weight(self):
        """``p + delta``, the key of the SSF order."""
        return self.p + self.delta


@dataclass(frozen=True)
class Instance:
    """Jobs plus the initial and maximum maintenance levels.

    An instance may hold jobs with ``delta > ml_max``; operations that
    need a feasible instance raise :class:`~maintsched.errors.InfeasibleJob`
    for them.

    """

    jobs: Tuple[Job, ...]
    ml0: int
    ml_max: int

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not 0 <= self.ml0 <= self.ml_max:
            raise ValueError(f"need 0 <= ml0 <= ml_max, got ml0={self.ml0} ml_max={self.ml_max}")
        checked(self.ml_max, "ml_max")

    @classmethod
    def from_pairs(cls, pairs, ml0, ml_max):
        """Build an instance from ``(p, delta)`` pairs."""
        return cls(tuple(Job(p, d) for p, d in pairs), ml0, ml_max)

    @property
    def n(self):
        """Number of jobs."""
        return len(self.jobs)

    @property
    def total_delta(self):
        return sum(job.delta for job in self.jobs)

    @property
    def feasible(self):
        """``True`` if every job can be processed after some maintenance."""
        return all(job.delta <= self.ml_max for job in self.jobs)

    def require_feasible(self):
        """Raise :class:`InfeasibleJob` for the first job over ``ml_max``."""
        for i, job in enumerate(self.jobs):
            if job.delta > self.ml_max:
                raise InfeasibleJob(i, job.delta, self.ml_max)

    def check_order(self, order):
        """Raise :class:`InvalidPermutation` unless ``order`` permutes the jobs."""
        if sorted(order) != list(range(self.n)):
            raise InvalidPermutation(
                f"order {tuple(order)} is not a permutation of 0..{self.n - 1}"
            )


@dataclass(frozen=True)
class MaintenanceActivity:
    """An MA of ``duration`` run immediately before the job at ``before_position``."""

    before_position: int
    duration: int

    def __post_init__(self):
        if self.before_position < 0:
            raise MalformedSchedule(f"MA position {self.before_position} is negative")
        if self.duration <= 0:
            raise MalformedSchedule(
                f"MA before position {self.before_position} has non-positive duration"
            )


@dataclass(frozen=True)
class Schedule:
    """A job order with the maintenance activities run between jobs."""

    order: Tuple[int, ...]
    mas: Tuple[MaintenanceActivity, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        mas = tuple(sorted(self.mas, key=lambda ma: ma.before_position))
        object.__setattr__(self, "mas", mas)

        if sorted(self.order) != list(range(len(self.order))):
            raise InvalidPermutation(f"order {self.order} is not a permutation")

        positions = [ma.before_position for ma in mas]
        if len(set(positions)) != len(positions):
            raise MalformedSchedule("more than one MA before the same position")
        if positions and positions[-1] >= len(self.order):
            raise MalformedSchedule(
                f"MA before position {positions[-1]} but only {len(self.order)} jobs"
            )

    @property
    def maintenance(self):
        """Total MA duration."""
        return sum(ma.duration for ma in self.mas)

    def durations(self):
        """Return ``{position: duration}`` for the MAs."""
        return {ma.before_position: ma.duration for ma in self.mas}


@dataclass(frozen=True)
class Evaluation:
    """Result of simulating a schedule.

    Attributes:
        completion (tuple): completion time of the job at each position.
        total (int): sum of completion times.
        makespan (int): completion time of the last job.
        feasible (bool): machine never broke down and was never over-maintained.
        first_ma_position (int or None): position of the separation job,
            i.e. the first job preceded by an MA.
        residual_before_first_ma (int): maintenance level left before the
            first MA (``ml0`` minus the deterioration of the jobs before
            it). Only meaningful when ``first_ma_position`` is set.

    """

    completion: Tuple[int, ...]
    total: int
    makespan: int
    feasible: bool
    first_ma_position: Optional[int]
    residual_before_first_ma: int


####################################################################
# Operations
####################################################################


def canonical_schedule(instance: Instance, order: Sequence[int]) -> Schedule:
    """Return the canonical schedule of ``instance`` on ``order``.

    Each MA is placed right before the job that needs it, with the
    smallest duration that lets that job run; MAs of zero duration are
    left out.

    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``
    :raises InvalidPermutation: if ``order`` is not a permutation

    """
    instance.require_feasible()
    instance.check_order(order)

    mas = []
    consumed = 0
    maintained = 0
    for pos, idx in enumerate(order):
        consumed += instance.jobs[idx].delta
        needed = max(0, consumed - instance.ml0)
        if needed > maintained:
            mas.append(MaintenanceActivity(pos, needed - maintained))
            maintained = needed

    return Schedule(tuple(order), tuple(mas))


def canonical_completions(instance: Instance, order: Sequence[int]) -> Tuple[int, ...]:
    """Completion times of the canonical schedule on ``order``.

    Uses the prefix formula directly, without building the schedule. The
    caller is responsible for ``order`` being a permutation.

    """
    completion = []
    elapsed = 0
    consumed = 0
    for idx in order:
        job = instance.jobs[idx]
        elapsed += job.p
        consumed += job.delta
        completion.append(elapsed + max(0, consumed - instance.ml0))
    return tuple(completion)


def canonical_total(instance: Instance, order: Sequence[int]) -> int:
    """Total completion time of the canonical schedule on ``order``."""
    return checked(sum(canonical_completions(instance, order)), "total completion time")


def evaluate(instance: Instance, schedule: Schedule, relaxed: bool = False) -> Evaluation:
    """Simulate ``schedule`` and judge its feasibility.

    The schedule need not be canonical: MAs may be early or longer than
    needed. A schedule is feasible when the level covers every job's
    deterioration and no MA would raise the level above ``ml_max``.

    With ``relaxed=True`` the level may go negative before the first MA
    (the machine "breaks down" but is restored by that MA); after it the
    strict rules apply.

    :raises InvalidPermutation: if the order does not fit the instance
    :raises ArithmeticOverflow: if a running sum leaves the 64-bit range

    """
    instance.check_order(schedule.order)
    durations = schedule.durations()

    level = instance.ml0
    elapsed = 0
    total = 0
    feasible = True
    first_ma = None
    residual = instance.ml0
    completion = []

    for pos, idx in enumerate(schedule.order):
        duration = durations.get(pos)
        if duration:
            if first_ma is None:
                first_ma = pos
                residual = level
            if level + duration > instance.ml_max:
                log.debug("MA before position %d overshoots ml_max", pos)
                feasible = False
            level = min(level + duration, instance.ml_max)
            elapsed = checked(elapsed + duration, "elapsed time")

        job = instance.jobs[idx]
        tolerated = relaxed and first_ma is None
        if level < job.delta and not tolerated:
            log.debug("machine breaks down at position %d (level %d < %d)", pos, level, job.delta)
            feasible = False
        level -= job.delta
        elapsed = checked(elapsed + job.p, "elapsed time")
        total = checked(total + elapsed, "total completion time")
        completion.append(elapsed)

    return Evaluation(
        completion=tuple(completion),
        total=total,
        makespan=completion[-1] if completion else 0,
        feasible=feasible,
        first_ma_position=first_ma,
        residual_before_first_ma=residual,
    )


def makespan_closed_form(instance: Instance) -> int:
    """Makespan shared by the canonical schedules of every job order.

    ``sum(p + delta) - ml0`` when the jobs deteriorate the machine by more
    than ``ml0``, else ``sum(p)``.

    """
    instance.require_feasible()
    total_p = checked(sum(job.p for job in instance.jobs), "sum of processing times")
    total_delta = checked(instance.total_delta, "sum of deteriorations")
    if total_delta > instance.ml0:
        return checked(total_p + total_delta - instance.ml0, "makespan")
    return total_p
