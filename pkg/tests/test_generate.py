from __future__ import annotations

import pytest

from maintsched.approx import is_agreeable
from maintsched.errors import InvalidParameter
from maintsched.generate import (
    agreeable_instance,
    random_instance,
    random_partition,
    reduction_instance,
    tight_instance,
)
from maintsched.reduction import PartitionInstance


def test_random_instance_is_deterministic() -> None:
    assert random_instance(8, 20, 20, 7) == random_instance(8, 20, 20, 7)
    assert random_instance(8, 20, 20, 7) != random_instance(8, 20, 20, 8)


def test_random_instance_respects_bounds() -> None:
    for seed in range(50):
        instance = random_instance(10, 5, 9, seed)
        assert instance.n == 10
        assert instance.ml_max == 9
        assert 0 <= instance.ml0 <= 9
        assert all(0 <= job.p <= 5 and 0 <= job.delta <= 9 for job in instance.jobs)
        assert instance.feasible


def test_agreeable_instances_are_agreeable() -> None:
    for seed in range(100):
        instance = agreeable_instance(8, 20, 20, seed)
        assert is_agreeable(instance)
        base = random_instance(8, 20, 20, seed)
        assert sorted(job.p for job in instance.jobs) == sorted(job.p for job in base.jobs)


def test_tight_instance() -> None:
    instance = tight_instance(100)
    assert [(job.p, job.delta) for job in instance.jobs] == [(1, 100), (99, 1)]
    assert instance.ml0 == instance.ml_max == 100


@pytest.mark.parametrize(
    "call",
    [
        lambda: tight_instance(1),
        lambda: random_instance(-1, 5, 5, 0),
        lambda: random_instance(3, -5, 5, 0),
        lambda: random_partition(0, 5, 0),
        lambda: random_partition(3, 0, 0),
    ],
)
def test_bad_parameters(call) -> None:
    with pytest.raises(InvalidParameter):
        call()


def test_random_partition_has_even_sum() -> None:
    for seed in range(200):
        part = random_partition(1 + seed % 7, 10, seed)
        assert sum(part.x) % 2 == 0
        assert all(value >= 1 for value in part.x)
    assert random_partition(5, 10, 3) == random_partition(5, 10, 3)


def test_reduction_instance_metadata() -> None:
    instance, meta = reduction_instance(PartitionInstance((1, 1, 2)))
    assert instance.n == 9
    assert meta == {"M": 41, "Q0": 637, "Q": 639, "B": 2}
