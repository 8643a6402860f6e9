#!/usr/bin/env python3

"""Exact minimisers of the total completion time for small instances.

Both solvers rely on the canonical completion-time formula: the job placed
after the set ``S`` completes at ``P(S) + p + max(0, D(S) + delta - ml0)``
where ``P`` and ``D`` are the sums of processing times and deteriorations.
The cost of a job therefore depends on the set before it, not on its order.

Ties are broken towards the lexicographically smallest job order, so both
solvers return the same ``best_order``.

"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Tuple

from .approx import solve_a1
from .errors import TooLarge
from .model import Instance, Schedule, canonical_schedule, canonical_total
from .util import checked

log = logging.getLogger(__name__)

#: Default largest instance :func:`solve_brute_force` accepts.
BRUTE_FORCE_LIMIT = 10

#: Largest instance :func:`solve_subset_dp` accepts.
DP_LIMIT = 24


@dataclass(frozen=True)
class ExactResult:
    """An optimal order with its total and the size of the search."""

    best_order: Tuple[int, ...]
    best_total: int
    explored: int
    schedule: Schedule


def _search(instance, first, bound):
    """Depth-first search below ``first`` (or over all orders if ``None``).

    Returns ``(best_total, best_order, explored)``; ``best_order`` is
    ``None`` when no order reaches ``bound``.

    """
    n = instance.n
    p = [job.p for job in instance.jobs]
    d = [job.delta for job in instance.jobs]
    ml0 = instance.ml0
    best = [None, None]
    explored = 0
    prefix = []

    def visit(used, psum, dsum, partial):
        nonlocal explored
        explored += 1
        if len(prefix) == n:
            if best[0] is None or partial < best[0]:
                best[0] = partial
                best[1] = tuple(prefix)
            return
        for j in range(n):
            if used & (1 << j):
                continue
            ps = psum + p[j]
            ds = dsum + d[j]
            cost = partial + ps + max(0, ds - ml0)
            if cost > bound or (best[0] is not None and cost >= best[0]):
                continue
            prefix.append(j)
            visit(used | (1 << j), ps, ds, cost)
            prefix.pop()

    if first is None:
        visit(0, 0, 0, 0)
    else:
        ps, ds = p[first], d[first]
        cost = ps + max(0, ds - ml0)
        prefix.append(first)
        if cost <= bound:
            visit(1 << first, ps, ds, cost)
        else:
            explored = 1

    return best[0], best[1], explored


def _search_task(args):
    return _search(*args)


def solve_brute_force(instance: Instance, limit_n: int = BRUTE_FORCE_LIMIT,
                      workers: int = 1) -> ExactResult:
    """Enumerate job orders and return the best one.

    The search abandons a partial order as soon as its cost exceeds the
    total of :func:`~maintsched.approx.solve_a1` or reaches the best total
    found so far. With ``workers > 1`` the orders are split by their first
    job over a process pool.

    :param limit_n: refuse instances with more jobs
    :param workers: number of processes
    :raises TooLarge: if the instance has more than ``limit_n`` jobs
    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``

    """
    if instance.n > limit_n:
        raise TooLarge(instance.n, limit_n)
    instance.require_feasible()
    if instance.n == 0:
        return ExactResult((), 0, 1, canonical_schedule(instance, ()))

    bound = canonical_total(instance, solve_a1(instance).order)

    if workers > 1 and instance.n > 1:
        tasks = [(instance, first, bound) for first in range(instance.n)]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(_search_task, tasks))
        explored = sum(part[2] for part in parts)
        found = [(total, order) for total, order, _ in parts if order is not None]
        best_total, best_order = min(found)
    else:
        best_total, best_order, explored = _search(instance, None, bound)

    log.debug("brute force: n=%d bound=%d best=%d explored=%d",
              instance.n, bound, best_total, explored)
    return ExactResult(best_order, checked(best_total, "total completion time"),
                       explored, canonical_schedule(instance, best_order))


def solve_subset_dp(instance: Instance, limit_n: int = DP_LIMIT) -> ExactResult:
    """Dynamic program over the set of jobs already scheduled.

    ``value[S]`` is the least total completion time of the jobs outside
    ``S`` when the jobs of ``S`` run first. The table is filled from the
    full set downwards and the order is rebuilt from the empty set,
    taking the smallest job index that attains the optimum at each step.

    :raises TooLarge: if the instance has more than ``limit_n`` jobs
    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``
    :raises ArithmeticOverflow: if the optimum leaves the 64-bit range

    """
    n = instance.n
    if n > min(limit_n, DP_LIMIT):
        raise TooLarge(n, min(limit_n, DP_LIMIT))
    instance.require_feasible()

    size = 1 << n
    full = size - 1
    ml0 = instance.ml0

    # completion time of the last job of set S
    finish = [0] * size
    psum = [0] * size
    dsum = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        j = low.bit_length() - 1
        rest = mask ^ low
        psum[mask] = psum[rest] + instance.jobs[j].p
        dsum[mask] = dsum[rest] + instance.jobs[j].delta
        finish[mask] = psum[mask] + max(0, dsum[mask] - ml0)
    del psum, dsum

    value = [0] * size
    bits = [1 << j for j in range(n)]
    for mask in range(full - 1, -1, -1):
        best = None
        for bit in bits:
            if mask & bit:
                continue
            nxt = mask | bit
            cand = finish[nxt] + value[nxt]
            if best is None or cand < best:
                best = cand
        value[mask] = best

    checked(value[0], "total completion time")

    order = []
    mask = 0
    while mask != full:
        for j, bit in enumerate(bits):
            if not mask & bit and finish[mask | bit] + value[mask | bit] == value[mask]:
                order.append(j)
                mask |= bit
                break

    log.debug("subset dp: n=%d best=%d states=%d", n, value[0], size)
    return ExactResult(tuple(order), value[0], size, canonical_schedule(instance, order))
