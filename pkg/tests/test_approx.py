from __future__ import annotations

import random
from fractions import Fraction

import pytest

from maintsched.approx import (
    audit_lemma2,
    audit_structure,
    is_agreeable,
    local_improve,
    solve_a1,
    solve_spt,
    spt_order,
    ssf_order,
)
from maintsched.errors import InfeasibleJob, NotCanonical
from maintsched.exact import solve_subset_dp
from maintsched.generate import agreeable_instance, random_instance, tight_instance
from maintsched.model import (
    Instance,
    MaintenanceActivity,
    Schedule,
    canonical_schedule,
    canonical_total,
    evaluate,
)


def total(instance, schedule):
    return evaluate(instance, schedule).total


def test_a1_on_tight_instance() -> None:
    instance = tight_instance(10)
    split = solve_a1(instance)
    assert split.prefix == (1,)
    assert split.separation == 0
    assert split.suffix == ()
    assert split.order == (1, 0)
    assert split.schedule.mas == (MaintenanceActivity(1, 1),)
    assert total(instance, split.schedule) == 20


def test_a1_without_maintenance_is_spt() -> None:
    instance = Instance.from_pairs([(3, 1), (1, 1)], ml0=2, ml_max=2)
    split = solve_a1(instance)
    assert split.separation is None
    assert split.order == (1, 0)
    assert split.schedule.mas == ()
    assert total(instance, split.schedule) == 5


def test_a1_breaks_ssf_ties_by_index() -> None:
    instance = Instance.from_pairs([(2, 3), (4, 1)], ml0=3, ml_max=5)
    split = solve_a1(instance)
    assert split.order == (0, 1)
    assert split.separation == 1
    assert total(instance, split.schedule) == 9


def test_a1_separation_condition() -> None:
    for seed in range(200):
        instance = random_instance(7, 20, 20, seed)
        split = solve_a1(instance)
        used = sum(instance.jobs[i].delta for i in split.prefix)
        assert used <= instance.ml0
        if split.separation is not None:
            assert used + instance.jobs[split.separation].delta > instance.ml0
            assert split.prefix == spt_order(instance, split.prefix)
            assert split.suffix == ssf_order(instance, split.suffix)


def test_a1_rejects_infeasible_instance() -> None:
    with pytest.raises(InfeasibleJob):
        solve_a1(Instance.from_pairs([(1, 4)], ml0=0, ml_max=3))


@pytest.mark.slow
def test_a1_is_within_twice_the_optimum() -> None:
    rng = random.Random(13)
    for seed in range(1000):
        instance = random_instance(rng.randint(1, 8), 20, 20, seed)
        found = total(instance, solve_a1(instance).schedule)
        best = solve_subset_dp(instance).best_total
        assert best <= found <= 2 * best


@pytest.mark.parametrize("lam", [10, 100, 1000, 10**6])
def test_tight_family(lam) -> None:
    instance = tight_instance(lam)
    found = total(instance, solve_a1(instance).schedule)
    best = solve_subset_dp(instance).best_total
    assert found == 2 * lam
    assert best == lam + 2
    if lam == 10**6:
        assert Fraction(found, best) > Fraction(1999990, 10**6)


def test_spt_examples() -> None:
    agreeable = Instance.from_pairs([(1, 1), (2, 2), (3, 3)], ml0=2, ml_max=3)
    assert total(agreeable, solve_spt(agreeable)) == 15

    same = Instance.from_pairs([(2, 2)] * 4, ml0=3, ml_max=3)
    assert solve_spt(same).order == (0, 1, 2, 3)

    crossed = tight_instance(10)
    assert total(crossed, solve_spt(crossed)) == 12


def test_spt_runs_smaller_delta_first_on_equal_p() -> None:
    instance = Instance.from_pairs([(1, 5), (1, 1)], ml0=1, ml_max=5)
    schedule = solve_spt(instance)
    assert schedule.order == (1, 0)
    assert total(instance, schedule) == solve_subset_dp(instance).best_total == 8


@pytest.mark.slow
def test_spt_is_optimal_on_agreeable_instances() -> None:
    rng = random.Random(5)
    for seed in range(500):
        instance = agreeable_instance(rng.randint(1, 8), 20, 20, seed)
        assert is_agreeable(instance)
        assert total(instance, solve_spt(instance)) == solve_subset_dp(instance).best_total


@pytest.mark.parametrize(
    "pairs, expected",
    [
        ([(1, 1), (2, 2)], True),
        ([(1, 10), (9, 1)], False),
        ([(4, 4)], True),
        ([], True),
        ([(2, 9), (2, 1), (3, 8)], True),
        ([(2, 9), (2, 1), (3, 7)], False),
    ],
)
def test_is_agreeable(pairs, expected) -> None:
    instance = Instance.from_pairs(pairs, ml0=0, ml_max=10)
    assert is_agreeable(instance) is expected


def test_audit_passes_a1_prefix_and_suffix() -> None:
    for seed in range(300):
        instance = random_instance(8, 20, 20, seed)
        report = audit_lemma2(instance, solve_a1(instance).schedule)
        assert report.spt_prefix_ok
        assert report.ssf_suffix_ok


def test_audit_flags_prefix_violation() -> None:
    instance = Instance.from_pairs([(5, 1), (1, 1), (1, 5)], ml0=2, ml_max=5)
    report = audit_lemma2(instance, canonical_schedule(instance, (0, 1, 2)))
    assert not report.spt_prefix_ok
    assert report.ssf_suffix_ok
    assert report.violations[0].position == 0
    assert report.violations[0].rule == "spt"
    assert not report.ok


def test_audit_boundary_on_tight_instance() -> None:
    instance = tight_instance(10)
    heuristic = audit_lemma2(instance, solve_a1(instance).schedule)
    assert not heuristic.boundary_ok
    assert [v.rule for v in heuristic.violations] == ["boundary"]

    optimal = audit_lemma2(instance, canonical_schedule(instance, (0, 1)))
    assert optimal.ok
    assert optimal.violations == ()


def test_audit_without_separation_checks_spt_only() -> None:
    instance = Instance.from_pairs([(3, 1), (1, 1)], ml0=2, ml_max=2)
    report = audit_lemma2(instance, canonical_schedule(instance, (0, 1)))
    assert not report.spt_prefix_ok
    assert report.ssf_suffix_ok
    assert report.boundary_ok


def test_audit_rejects_non_canonical_schedule() -> None:
    instance = tight_instance(10)
    schedule = Schedule((0, 1), (MaintenanceActivity(1, 2),))
    with pytest.raises(NotCanonical):
        audit_lemma2(instance, schedule)


def test_audit_structure_report_serializes() -> None:
    instance = Instance.from_pairs([(5, 1), (1, 1)], ml0=2, ml_max=2)
    data = audit_structure(instance, (0, 1), None, 2).to_dict()
    assert data == {
        "spt_prefix_ok": False,
        "ssf_suffix_ok": True,
        "boundary_ok": True,
        "violations": [{"position": 0, "rule": "spt", "detail": "p=5 before p=1"}],
    }


def test_local_improve_examples() -> None:
    optimal = Instance.from_pairs([(1, 1), (2, 2), (3, 3)], ml0=2, ml_max=3)
    schedule = canonical_schedule(optimal, (0, 1, 2))
    assert local_improve(optimal, schedule) == schedule

    reversed_ = Instance.from_pairs([(3, 3), (2, 2), (1, 1)], ml0=2, ml_max=3)
    improved = local_improve(reversed_, canonical_schedule(reversed_, (0, 1, 2)))
    assert total(reversed_, improved) == 15

    tight = tight_instance(10)
    improved = local_improve(tight, solve_a1(tight).schedule)
    assert total(tight, improved) == 12


def test_local_improve_reaches_a_swap_fixed_point() -> None:
    for seed in range(100):
        instance = random_instance(6, 20, 20, seed)
        start = canonical_schedule(instance, tuple(reversed(range(instance.n))))
        improved = local_improve(instance, start)
        best = canonical_total(instance, improved.order)
        assert best <= canonical_total(instance, start.order)
        order = list(improved.order)
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                order[i], order[j] = order[j], order[i]
                assert canonical_total(instance, order) >= best
                order[i], order[j] = order[j], order[i]


def test_optimum_improves_into_a_structured_schedule() -> None:
    rng = random.Random(21)
    for seed in range(300):
        instance = random_instance(rng.randint(1, 8), 20, 20, seed)
        best = solve_subset_dp(instance)
        improved = local_improve(instance, best.schedule)
        assert canonical_total(instance, improved.order) == best.best_total
        report = audit_lemma2(instance, improved)
        assert report.spt_prefix_ok, (seed, report.violations)
        assert report.ssf_suffix_ok, (seed, report.violations)
