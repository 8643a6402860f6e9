#!/usr/bin/env python3

"""Seeded instance generators.

All generators take a ``seed`` and return the same instance for the same
arguments.

"""

import random

from .errors import InvalidParameter
from .model import Instance
from .reduction import PartitionInstance, build_reduction


def _require(condition, message):
    if not condition:
        raise InvalidParameter(message)


def random_instance(n, max_p, max_delta, seed):
    """Uniform jobs with ``ml_max = max_delta`` and ``ml0`` uniform in ``[0, ml_max]``.

    :raises InvalidParameter: if a bound is negative

    """
    _require(n >= 0, f"n must be >= 0, got {n}")
    _require(max_p >= 0, f"max_p must be >= 0, got {max_p}")
    _require(max_delta >= 0, f"max_delta must be >= 0, got {max_delta}")
    rng = random.Random(seed)
    pairs = [(rng.randint(0, max_p), rng.randint(0, max_delta)) for _ in range(n)]
    ml0 = rng.randint(0, max_delta)
    return Instance.from_pairs(pairs, ml0, max_delta)


def agreeable_instance(n, max_p, max_delta, seed):
    """Random instance whose deltas are sorted the same way as the processing times.

    Pairing the ``i``-th smallest ``p`` with the ``i``-th smallest
    ``delta`` makes ``p + delta`` follow ``p``.

    """
    base = random_instance(n, max_p, max_delta, seed)
    ps = sorted(job.p for job in base.jobs)
    deltas = sorted(job.delta for job in base.jobs)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    pairs = [(ps[i], deltas[i]) for i in order]
    return Instance.from_pairs(pairs, base.ml0, base.ml_max)


def tight_instance(lam):
    """Two jobs ``(1, lam)`` and ``(lam - 1, 1)`` with ``ml0 = ml_max = lam``.

    The SSF/SPT split heuristic scores ``2 lam`` on it, the optimum is
    ``lam + 2``.

    :raises InvalidParameter: if ``lam < 2``

    """
    _require(lam >= 2, f"lambda must be >= 2, got {lam}")
    return Instance.from_pairs([(1, lam), (lam - 1, 1)], lam, lam)


def random_partition(n, max_x, seed):
    """Random :class:`PartitionInstance` with ``n`` integers in ``[1, max_x]``.

    If the sum comes out odd the first integer is moved by one to fix it.

    """
    _require(n >= 1, f"n must be >= 1, got {n}")
    _require(max_x >= 1, f"max_x must be >= 1, got {max_x}")
    rng = random.Random(seed)
    x = [rng.randint(1, max_x) for _ in range(n)]
    if sum(x) % 2:
        x[0] += -1 if x[0] > 1 else 1
    return PartitionInstance(tuple(x))


def reduction_instance(part):
    """Instance and sidecar metadata of the reduction of ``part``."""
    art = build_reduction(part)
    return art.instance, art.metadata()
