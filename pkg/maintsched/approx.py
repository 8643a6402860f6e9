#!/usr/bin/env python3

"""Polynomial-time schedulers and the structural audit of optimal schedules.

- :func:`solve_a1` sorts jobs by ``p + delta`` (SSF), cuts the order at the
  separation job and re-sorts the jobs before it by ``p`` (SPT). Its total
  completion time is at most twice the optimum.
- :func:`solve_spt` is optimal on agreeable instances.
- :func:`audit_lemma2` checks a canonical schedule against the ordering
  conditions every optimal schedule can be brought into.
- :func:`local_improve` applies improving pairwise swaps until none is left.

"""

import logging
from dataclasses import dataclass
from itertools import groupby
from typing import Optional, Tuple

from .errors import NotCanonical
from .model import Instance, Schedule, canonical_schedule, canonical_total

log = logging.getLogger(__name__)


def spt_order(instance, indices=None):
    """Return ``indices`` (default: all jobs) sorted by ``(p, index)``."""
    if indices is None:
        indices = range(instance.n)
    return tuple(sorted(indices, key=lambda i: (instance.jobs[i].p, i)))


def ssf_order(instance, indices=None):
    """Return ``indices`` (default: all jobs) sorted by ``(p + delta, index)``."""
    if indices is None:
        indices = range(instance.n)
    return tuple(sorted(indices, key=lambda i: (instance.jobs[i].weight, i)))


####################################################################
# Result types
####################################################################


@dataclass(frozen=True)
class SplitSchedule:
    """A schedule cut at its separation job.

    Attributes:
        prefix (tuple): jobs before the separation job, SPT order.
        separation (int or None): the separation job, ``None`` when no
            maintenance is needed at all.
        suffix (tuple): jobs after the separation job, SSF order.
        schedule (Schedule): canonical schedule on ``order``.

    """

    prefix: Tuple[int, ...]
    separation: Optional[int]
    suffix: Tuple[int, ...]
    schedule: Schedule

    @property
    def order(self):
        middle = () if self.separation is None else (self.separation,)
        return self.prefix + middle + self.suffix


@dataclass(frozen=True)
class Violation:
    """One failed ordering condition."""

    position: int
    rule: str
    detail: str

    def to_dict(self):
        return {"position": self.position, "rule": self.rule, "detail": self.detail}


@dataclass(frozen=True)
class AuditReport:
    """Outcome of :func:`audit_lemma2` or :func:`audit_structure`."""

    spt_prefix_ok: bool
    ssf_suffix_ok: bool
    boundary_ok: bool
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self):
        return self.spt_prefix_ok and self.ssf_suffix_ok and self.boundary_ok

    def to_dict(self):
        return {
            "spt_prefix_ok": self.spt_prefix_ok,
            "ssf_suffix_ok": self.ssf_suffix_ok,
            "boundary_ok": self.boundary_ok,
            "violations": [v.to_dict() for v in self.violations],
        }


####################################################################
# Algorithms
####################################################################


def solve_a1(instance: Instance) -> SplitSchedule:
    """Run the SSF/SPT split heuristic.

    Jobs are taken in SSF order; the first job whose deterioration no
    longer fits the initial level (together with the jobs before it)
    becomes the separation job. The jobs before it are re-sorted SPT,
    those after keep the SSF order. When every job fits, the whole set is
    scheduled SPT without maintenance.

    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``

    """
    instance.require_feasible()
    ssf = ssf_order(instance)

    consumed = 0
    cut = None
    for pos, idx in enumerate(ssf):
        consumed += instance.jobs[idx].delta
        if consumed > instance.ml0:
            cut = pos
            break

    if cut is None:
        prefix = spt_order(instance)
        separation = None
        suffix = ()
    else:
        prefix = spt_order(instance, ssf[:cut])
        separation = ssf[cut]
        suffix = ssf[cut + 1:]

    middle = () if separation is None else (separation,)
    schedule = canonical_schedule(instance, prefix + middle + suffix)
    log.debug("a1: prefix=%s separation=%s suffix=%s", prefix, separation, suffix)
    return SplitSchedule(prefix, separation, suffix, schedule)


def solve_spt(instance: Instance) -> Schedule:
    """Canonical schedule on the SPT order.

    Jobs of equal ``p`` run in order of ``delta``, then index; with
    that tie-break the schedule is optimal on agreeable instances.

    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``

    """
    instance.require_feasible()
    jobs = instance.jobs
    order = sorted(range(instance.n), key=lambda i: (jobs[i].p, jobs[i].delta, i))
    return canonical_schedule(instance, order)


def is_agreeable(instance: Instance) -> bool:
    """Return ``True`` if a shorter job never has a larger ``p + delta``."""
    heaviest = None  # largest p + delta among strictly shorter jobs
    jobs = sorted(instance.jobs, key=lambda job: job.p)
    for _, group in groupby(jobs, key=lambda job: job.p):
        weights = [job.weight for job in group]
        if heaviest is not None and min(weights) < heaviest:
            return False
        heaviest = max(weights) if heaviest is None else max(heaviest, *weights)
    return True


####################################################################
# Audit
####################################################################


def audit_structure(instance, order, separation, residual):
    """Check the ordering conditions on an explicit split of ``order``.

    :param order: job order
    :param separation: position of the separation job or ``None``
    :param residual: level left before the first MA; may be negative
        for schedules that break the machine down before it
    :returns: :class:`AuditReport`

    The schedule itself is not required to be canonical.

    """
    jobs = [instance.jobs[i] for i in order]
    n = len(jobs)
    violations = []
    end = n if separation is None else separation

    spt_ok = True
    for pos in range(1, end):
        if jobs[pos - 1].p > jobs[pos].p:
            spt_ok = False
            violations.append(Violation(
                pos - 1, "spt",
                f"p={jobs[pos - 1].p} before p={jobs[pos].p}",
            ))

    ssf_ok = True
    boundary_ok = True
    if separation is not None:
        for pos in range(separation + 2, n):
            if jobs[pos - 1].weight > jobs[pos].weight:
                ssf_ok = False
                violations.append(Violation(
                    pos - 1, "ssf",
                    f"p+delta={jobs[pos - 1].weight} before p+delta={jobs[pos].weight}",
                ))

        k = separation
        middle = jobs[k].p + (jobs[k].delta - residual)
        if k > 0:
            left = jobs[k - 1].p + min(jobs[k - 1].delta, jobs[k].delta - residual)
            if left > middle:
                boundary_ok = False
                violations.append(Violation(
                    k - 1, "boundary", f"left side {left} exceeds separation value {middle}",
                ))
        if k + 1 < n:
            right = jobs[k + 1].p + max(0, jobs[k + 1].delta - residual)
            if middle > right:
                boundary_ok = False
                violations.append(Violation(
                    k, "boundary", f"separation value {middle} exceeds right side {right}",
                ))

    return AuditReport(spt_ok, ssf_ok, boundary_ok, tuple(violations))


def audit_lemma2(instance: Instance, schedule: Schedule) -> AuditReport:
    """Audit a canonical schedule's prefix, suffix and boundary.

    Jobs before the separation job must be in SPT order, jobs after it
    in SSF order, and its neighbours must satisfy the exchange
    inequality around it. Without a separation job the whole schedule
    must be SPT.

    :raises NotCanonical: if the MAs differ from the canonical ones

    """
    expected = canonical_schedule(instance, schedule.order)
    if expected.mas != schedule.mas:
        raise NotCanonical(f"MAs {schedule.mas} differ from canonical {expected.mas}")

    if schedule.mas:
        separation = schedule.mas[0].before_position
        residual = instance.ml0 - sum(
            instance.jobs[i].delta for i in schedule.order[:separation]
        )
    else:
        separation = None
        residual = instance.ml0
    return audit_structure(instance, schedule.order, separation, residual)


def local_improve(instance: Instance, schedule: Schedule) -> Schedule:
    """Apply improving pairwise swaps until none is left.

    Pairs are scanned as ``(0, 1), (0, 2), ..., (n-2, n-1)``; the first
    swap that strictly lowers the canonical total is taken and the scan
    starts over.

    """
    order = list(schedule.order)
    best = canonical_total(instance, order)
    rounds = 0
    improved = True
    while improved:
        improved = False
        for i in range(len(order) - 1):
            for j in range(i + 1, len(order)):
                order[i], order[j] = order[j], order[i]
                total = canonical_total(instance, order)
                if total < best:
                    best = total
                    improved = True
                    break
                order[i], order[j] = order[j], order[i]
            if improved:
                rounds += 1
                break

    log.debug("local_improve: %d swaps, total %d", rounds, best)
    return canonical_schedule(instance, order)
