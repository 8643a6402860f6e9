#!/usr/bin/env python3

"""Reduction from Partition to scheduling with partial maintenance.

A Partition input ``x_1..x_n`` with ``sum(x) = 2B`` becomes an instance
of ``2n + 3`` jobs:

- jobs ``i`` and ``n+1+i`` (``i = 0..n``) are identical, with
  ``p_i = x_1 + ... + x_i`` and ``delta_i = M - 2 p_i``;
- the special job ``2n+2`` has ``p = M - 2B`` and ``delta = 0``;
- ``ml_max`` is the deterioration of jobs ``0..n`` and ``ml0`` is ``2B``
  less.

The instance has a schedule of total completion time at most
``Q = Q0 + B`` exactly when ``x`` can be split into two halves of sum
``B``, where ``Q0`` is the total of the initial schedule ``pi0``. ``pi0``
runs jobs ``0..n``, then the special job (the *center*), then
``2n+1, 2n, ..., n+1``; it breaks the machine down before its first MA.

This module builds the instance, certifies a given subset by swapping
jobs across the center, and recovers a subset from a good schedule.

"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .approx import AuditReport, audit_structure, local_improve
from .errors import (
    CertificateViolated,
    InfeasibleSchedule,
    InvalidPartition,
    InvalidSubset,
    NotWithinThreshold,
    OddSum,
    TooLarge,
)
from .exact import solve_subset_dp
from .model import (
    Evaluation,
    Instance,
    Job,
    MaintenanceActivity,
    Schedule,
    canonical_schedule,
    evaluate,
)
from .util import checked

log = logging.getLogger(__name__)

#: Largest Partition input :func:`decide_partition_by_search` accepts.
DECIDE_LIMIT = 4


####################################################################
# Types
####################################################################


@dataclass(frozen=True)
class PartitionInstance:
    """Positive integers ``x_1..x_n`` with an even sum."""

    x: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if not self.x:
            raise InvalidPartition("partition input is empty")
        for i, value in enumerate(self.x, 1):
            if value < 1:
                raise InvalidPartition(f"x_{i} = {value} is not a positive integer")
        if sum(self.x) % 2:
            raise OddSum(f"sum {sum(self.x)} is odd")

    @property
    def n(self):
        return len(self.x)

    @property
    def b(self):
        """Half of the sum."""
        return sum(self.x) // 2


@dataclass(frozen=True)
class ReductionArtifacts:
    """Constructed instance with its constants and initial schedule."""

    part: PartitionInstance
    instance: Instance
    m_value: int
    q0: int
    q: int
    pi0: Schedule

    @property
    def n(self):
        return self.part.n

    @property
    def special(self):
        """Index of the job with zero deterioration."""
        return 2 * self.part.n + 2

    @property
    def center(self):
        """Position of the special job in ``pi0``."""
        return self.part.n + 1

    def metadata(self):
        return {"M": self.m_value, "Q0": self.q0, "Q": self.q, "B": self.part.b}


@dataclass(frozen=True)
class SwapCertificate:
    """Schedules ``pi0..pim`` produced by swapping across the center.

    ``totals`` and ``deteriorations`` hold, for each schedule, the total
    completion time and the deterioration of the jobs before the center.

    """

    indices: Tuple[int, ...]
    schedules: Tuple[Schedule, ...]
    totals: Tuple[int, ...]
    deteriorations: Tuple[int, ...]
    final_evaluation: Evaluation

    @property
    def final(self):
        return self.schedules[-1]


####################################################################
# Construction
####################################################################


def initial_total_closed_form(part: PartitionInstance, m_value: int) -> int:
    """Total of ``pi0`` as ``(n+2)(n+3)/2 * M + 2 * sum((n-j+1) p_j)``."""
    n = part.n
    prefix = _prefix_sums(part)
    weighted = sum((n - j + 1) * prefix[j] for j in range(n + 1))
    return checked((n + 2) * (n + 3) // 2 * m_value + 2 * weighted, "Q0")


def _prefix_sums(part):
    sums = [0]
    for value in part.x:
        sums.append(sums[-1] + value)
    return sums


def build_reduction(part: PartitionInstance) -> ReductionArtifacts:
    """Construct the scheduling instance, ``Q0``, ``Q`` and ``pi0`` for ``part``.

    ``M`` is ``(4n + 8) B + 1``.

    :raises ArithmeticOverflow: if a constant leaves the 64-bit range

    """
    n, b = part.n, part.b
    m_value = checked((4 * n + 8) * b + 1, "M")
    p = _prefix_sums(part)
    delta = [m_value - 2 * pj for pj in p]

    half = [Job(p[i], delta[i]) for i in range(n + 1)]
    special = Job(m_value - 2 * b, 0)
    ml_max = checked(sum(delta), "ml_max")
    instance = Instance(tuple(half + half + [special]), ml_max - 2 * b, ml_max)

    # initial total, term by term
    q0 = sum((n - j + 1) * p[j] for j in range(n + 1))
    q0 += (n + 2) * (sum(p) + 2 * b + special.p)
    q0 += sum((j + 1) * (p[j] + delta[j]) for j in range(n + 1))
    q0 = checked(q0, "Q0")
    q = checked(q0 + b, "Q")

    order = tuple(range(n + 1)) + (2 * n + 2,) + tuple(range(2 * n + 1, n, -1))
    pi0 = _centered_schedule(instance, order, n + 1)

    log.debug("reduction: n=%d B=%d M=%d Q0=%d Q=%d", n, b, m_value, q0, q)
    return ReductionArtifacts(part, instance, m_value, q0, q, pi0)


def _centered_schedule(instance, order, center):
    """Schedule with no MA before ``center`` and minimal MAs from it on.

    The level may go negative before ``center``; the first MA restores
    it just enough for the job at ``center``.

    """
    mas = []
    consumed = 0
    maintained = 0
    for pos, idx in enumerate(order):
        consumed += instance.jobs[idx].delta
        if pos < center:
            continue
        needed = max(0, consumed - instance.ml0)
        if needed > maintained:
            mas.append(MaintenanceActivity(pos, needed - maintained))
            maintained = needed
    return Schedule(tuple(order), tuple(mas))


def evaluate_pi0(art: ReductionArtifacts, relaxed: bool = True) -> Evaluation:
    """Evaluate ``pi0``; its total is ``Q0`` and it is infeasible in strict mode."""
    return evaluate(art.instance, art.pi0, relaxed=relaxed)


def audit_initial_schedule(art: ReductionArtifacts) -> AuditReport:
    """Check ``pi0``'s ordering around the center with residual level ``-2B``."""
    return audit_structure(art.instance, art.pi0.order, art.center, -2 * art.part.b)


####################################################################
# Certificate and extraction
####################################################################


def _pre_center_deterioration(art, order):
    return sum(art.instance.jobs[i].delta for i in order[:art.center])


def apply_swap_certificate(art: ReductionArtifacts, subset_indices) -> SwapCertificate:
    """Swap ``J_{i-1}`` with ``J_{n+1+i}`` for each ``i`` of the subset.

    After each swap the total must rise by ``x_i`` and the deterioration
    before the center must fall by ``2 x_i``. When the subset sums to
    ``B`` the last schedule is feasible with total ``Q``.

    :param subset_indices: sorted indices into ``x``, starting at 1
    :raises InvalidSubset: if the indices are unsorted, repeated or out
        of range
    :raises CertificateViolated: if a swap changes the schedule by other
        amounts

    """
    n = art.n
    indices = tuple(subset_indices)
    if list(indices) != sorted(set(indices)) or any(not 1 <= i <= n for i in indices):
        raise InvalidSubset(f"{indices} is not a sorted subset of 1..{n}")

    order = list(art.pi0.order)
    schedules = [art.pi0]
    totals = [evaluate(art.instance, art.pi0, relaxed=True).total]
    deteriorations = [_pre_center_deterioration(art, order)]

    for i in indices:
        lo, hi = order.index(i - 1), order.index(n + 1 + i)
        order[lo], order[hi] = order[hi], order[lo]
        schedule = _centered_schedule(art.instance, order, art.center)
        total = evaluate(art.instance, schedule, relaxed=True).total
        deterioration = _pre_center_deterioration(art, order)

        x = art.part.x[i - 1]
        if total - totals[-1] != x or deteriorations[-1] - deterioration != 2 * x:
            raise CertificateViolated(
                f"swap for x_{i}={x}: total {totals[-1]} -> {total}, "
                f"deterioration {deteriorations[-1]} -> {deterioration}"
            )
        schedules.append(schedule)
        totals.append(total)
        deteriorations.append(deterioration)

    final = evaluate(art.instance, schedules[-1])
    log.debug("certificate %s: totals %s feasible=%s", indices, totals, final.feasible)
    return SwapCertificate(indices, tuple(schedules), tuple(totals),
                           tuple(deteriorations), final)


def extract_partition(art: ReductionArtifacts, schedule: Schedule) -> Optional[Tuple[int, ...]]:
    """Recover a half-sum subset from a schedule of total at most ``Q``.

    The schedule is normalised first (canonical MAs, then improving
    swaps) and the special job must not be among the first ``n + 1``
    jobs. Moving it to the center from a later position leaves those
    jobs unchanged. Copies of the same job are counted per class
    ``idx mod (n+1)`` over the first ``n + 1`` jobs; classes with both
    copies there are paired with classes with none, both in ascending
    order, and each pair ``(l, r)`` with ``l < r`` contributes
    ``x_{l+1}..x_r``.

    :returns: sorted indices into ``x`` (starting at 1) or ``None`` if
        the schedule does not yield a verified subset
    :raises InfeasibleSchedule: if the schedule breaks the machine
    :raises NotWithinThreshold: if its total exceeds ``Q``

    """
    result = evaluate(art.instance, schedule)
    if not result.feasible:
        raise InfeasibleSchedule("schedule is not feasible for the reduction instance")
    if result.total > art.q:
        raise NotWithinThreshold(f"total {result.total} exceeds Q = {art.q}")

    improved = local_improve(art.instance, canonical_schedule(art.instance, schedule.order))
    order = list(improved.order)
    n, center = art.n, art.center
    if order.index(art.special) < center:
        log.debug("special job runs among the first %d jobs", center)
        return None

    counts = [0] * (n + 1)
    for idx in order[:center]:
        counts[idx % (n + 1)] += 1
    right = [c for c in range(n + 1) if counts[c] == 2]
    left = [c for c in range(n + 1) if counts[c] == 0]

    subset = set()
    for lo, hi in zip(left, right):
        if lo >= hi:
            log.debug("pair (%d, %d) is not increasing", lo, hi)
            return None
        subset.update(range(lo + 1, hi + 1))

    found = tuple(sorted(subset))
    if sum(art.part.x[i - 1] for i in found) != art.part.b:
        log.debug("subset %s does not sum to B = %d", found, art.part.b)
        return None
    return found


####################################################################
# Decision
####################################################################


def subset_with_half_sum(part: PartitionInstance) -> Optional[Tuple[int, ...]]:
    """Indices (starting at 1) of a subset summing to ``B``, or ``None``."""
    # sum -> first subset reaching it
    reach = {0: ()}
    for i, value in enumerate(part.x, 1):
        for total, subset in list(reach.items()):
            nxt = total + value
            if nxt <= part.b and nxt not in reach:
                reach[nxt] = subset + (i,)
    return reach.get(part.b)


def decide_partition_by_search(part: PartitionInstance, limit_n: int = DECIDE_LIMIT) -> bool:
    """Decide ``part`` by solving its reduction exactly and comparing with ``Q``.

    :raises TooLarge: if ``part`` has more than ``limit_n`` integers

    """
    if part.n > limit_n:
        raise TooLarge(part.n, limit_n)
    art = build_reduction(part)
    optimum = solve_subset_dp(art.instance)
    log.debug("decide %s: optimum %d, Q %d", part.x, optimum.best_total, art.q)
    return optimum.best_total <= art.q


def center_profile(art: ReductionArtifacts, schedule: Schedule):
    """Return ``(before, after)`` for a feasible schedule.

    ``before`` counts the jobs other than the special one that run before
    the first MA; ``after`` counts the jobs run after the special job.

    """
    result = evaluate(art.instance, schedule)
    end = len(schedule.order) if result.first_ma_position is None else result.first_ma_position
    before = sum(1 for idx in schedule.order[:end] if idx != art.special)
    after = len(schedule.order) - schedule.order.index(art.special) - 1
    return before, after
