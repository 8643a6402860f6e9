from __future__ import annotations

import random

import pytest

from maintsched.errors import InfeasibleJob, TooLarge
from maintsched.exact import solve_brute_force, solve_subset_dp
from maintsched.generate import agreeable_instance, random_instance, tight_instance
from maintsched.model import Instance, canonical_total, evaluate

SOLVERS = [solve_brute_force, solve_subset_dp]


@pytest.mark.parametrize("solver", SOLVERS)
def test_tight_instance_optimum(solver) -> None:
    result = solver(tight_instance(10))
    assert result.best_total == 12
    assert result.best_order == (0, 1)


@pytest.mark.parametrize("solver", SOLVERS)
def test_single_job(solver) -> None:
    result = solver(Instance.from_pairs([(7, 3)], ml0=4, ml_max=4))
    assert result.best_total == 7
    assert result.best_order == (0,)


@pytest.mark.parametrize("solver", SOLVERS)
def test_agreeable_example(solver) -> None:
    result = solver(Instance.from_pairs([(1, 1), (2, 2), (3, 3)], ml0=2, ml_max=3))
    assert result.best_total == 15
    assert result.best_order == (0, 1, 2)


@pytest.mark.parametrize("solver", SOLVERS)
def test_two_jobs(solver) -> None:
    instance = Instance.from_pairs([(2, 3), (4, 1)], ml0=3, ml_max=5)
    result = solver(instance)
    assert result.best_total == 9
    assert evaluate(instance, result.schedule).total == 9


@pytest.mark.parametrize("solver", SOLVERS)
def test_empty_instance(solver) -> None:
    result = solver(Instance((), 0, 0))
    assert result.best_total == 0
    assert result.best_order == ()


@pytest.mark.parametrize("solver", SOLVERS)
def test_infeasible_job_propagates(solver) -> None:
    with pytest.raises(InfeasibleJob):
        solver(Instance.from_pairs([(1, 4)], ml0=0, ml_max=3))


def test_size_limits() -> None:
    eleven = Instance.from_pairs([(1, 1)] * 11, ml0=1, ml_max=1)
    with pytest.raises(TooLarge):
        solve_brute_force(eleven)
    with pytest.raises(TooLarge):
        solve_subset_dp(eleven, limit_n=10)
    big = Instance.from_pairs([(1, 1)] * 25, ml0=1, ml_max=1)
    with pytest.raises(TooLarge) as err:
        solve_subset_dp(big)
    assert err.value.limit == 24


def test_explored_counts() -> None:
    instance = random_instance(6, 10, 10, 3)
    assert solve_subset_dp(instance).explored == 2**6
    assert solve_brute_force(instance).explored >= 7


def test_parallel_brute_force_matches_sequential() -> None:
    for seed in range(5):
        instance = random_instance(7, 20, 20, seed)
        sequential = solve_brute_force(instance)
        parallel = solve_brute_force(instance, workers=2)
        assert parallel.best_total == sequential.best_total
        assert parallel.best_order == sequential.best_order


@pytest.mark.slow
def test_dp_agrees_with_brute_force() -> None:
    rng = random.Random(99)
    for seed in range(1000):
        instance = random_instance(rng.randint(0, 8), 20, 20, seed)
        dp = solve_subset_dp(instance)
        bf = solve_brute_force(instance)
        assert dp.best_total == bf.best_total
        assert dp.best_order == bf.best_order
        assert canonical_total(instance, dp.best_order) == dp.best_total


def test_optimum_is_invariant_under_relabeling() -> None:
    rng = random.Random(1)
    for seed in range(100):
        instance = random_instance(6, 20, 20, seed)
        jobs = list(instance.jobs)
        rng.shuffle(jobs)
        relabeled = Instance(tuple(jobs), instance.ml0, instance.ml_max)
        assert solve_subset_dp(relabeled).best_total == solve_subset_dp(instance).best_total


def test_no_pairwise_swap_improves_the_optimum() -> None:
    for seed in range(100):
        instance = agreeable_instance(6, 20, 20, seed) if seed % 2 else random_instance(6, 20, 20, seed)
        result = solve_subset_dp(instance)
        order = list(result.best_order)
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                order[i], order[j] = order[j], order[i]
                assert canonical_total(instance, order) >= result.best_total
                order[i], order[j] = order[j], order[i]
