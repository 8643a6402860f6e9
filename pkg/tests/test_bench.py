from __future__ import annotations

import json
import logging
from fractions import Fraction

import pytest

from maintsched.bench import (
    CSV_HEADER,
    bench_instance,
    format_ratio,
    instance_files,
    render_csv,
    run_bench,
    solve,
)
from maintsched.codec import instance_to_dict
from maintsched.errors import InvalidParameter
from maintsched.generate import agreeable_instance, random_instance, tight_instance


@pytest.fixture
def tight_dir(tmp_path):
    for lam in (10, 100, 1000):
        path = tmp_path / f"tight{lam}.json"
        path.write_text(json.dumps(instance_to_dict(tight_instance(lam))))
    (tmp_path / "tight10.meta.json").write_text('{"M": 1}')
    (tmp_path / "notes.txt").write_text("ignored")
    return tmp_path


def test_instance_files_skip_sidecars(tight_dir) -> None:
    names = [p.rsplit("/", 1)[-1] for p in instance_files(str(tight_dir))]
    assert names == ["tight10.json", "tight100.json", "tight1000.json"]


def test_tight_family_report(tight_dir) -> None:
    records = run_bench(instance_files(str(tight_dir)), ["a1", "exact-dp"], timing=False)
    lines = render_csv(records).splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1:] == [
        "tight10,2,a1,20,12,1.666667,0",
        "tight10,2,exact-dp,12,12,1.000000,0",
        "tight100,2,a1,200,102,1.960784,0",
        "tight100,2,exact-dp,102,102,1.000000,0",
        "tight1000,2,a1,2000,1002,1.996008,0",
        "tight1000,2,exact-dp,1002,1002,1.000000,0",
        "MAX,,a1,,,1.996008,",
        "MAX,,exact-dp,,,1.000000,",
    ]


def test_parallel_bench_matches_sequential(tight_dir) -> None:
    paths = instance_files(str(tight_dir))
    sequential = run_bench(paths, ["spt", "a1"], timing=False)
    parallel = run_bench(paths, ["spt", "a1"], workers=2, timing=False)
    assert parallel == sequential


def test_spt_is_exact_on_an_agreeable_corpus(tmp_path) -> None:
    for seed in range(20):
        instance = agreeable_instance(6, 20, 20, seed)
        (tmp_path / f"agree{seed:02d}.json").write_text(json.dumps(instance_to_dict(instance)))
    records = run_bench(instance_files(str(tmp_path)), ["spt"], timing=False)
    assert len(records) == 20
    assert {format_ratio(r.ratio) for r in records} == {"1.000000"}
    assert render_csv(records).splitlines()[-1] == "MAX,,spt,,,1.000000,"


def test_without_oracle(tight_dir) -> None:
    records = run_bench(instance_files(str(tight_dir)), ["spt"], oracle="none", timing=False)
    assert all(r.optimum is None and r.ratio is None for r in records)
    text = render_csv(records, with_summary=False)
    assert "tight10,2,spt,12,,,0" in text.splitlines()
    assert "MAX" not in text


def test_empty_directory(tmp_path) -> None:
    records = run_bench(instance_files(str(tmp_path)), ["a1"])
    assert records == []
    assert render_csv(records) == ",".join(CSV_HEADER) + "\n"


def test_unreadable_file_is_skipped(tight_dir, caplog) -> None:
    (tight_dir / "broken.json").write_text("{not json")
    with caplog.at_level(logging.WARNING):
        records = run_bench(instance_files(str(tight_dir)), ["a1"], timing=False)
    assert {r.instance_id for r in records} == {"tight10", "tight100", "tight1000"}
    assert "broken.json" in caplog.text


def test_timing_is_recorded(tight_dir) -> None:
    records = run_bench(instance_files(str(tight_dir)), ["a1"], oracle="none")
    assert all(r.wall_time >= 0 for r in records)


def test_unknown_names_are_rejected() -> None:
    with pytest.raises(InvalidParameter):
        run_bench([], ["greedy"])
    with pytest.raises(InvalidParameter):
        run_bench([], ["a1"], oracle="exact-bf")
    with pytest.raises(InvalidParameter):
        solve(tight_instance(10), "greedy")


def test_heuristics_never_beat_the_optimum() -> None:
    for seed in range(50):
        instance = random_instance(6, 20, 20, seed)
        for record in bench_instance(str(seed), instance, ["spt", "a1", "exact-bf"], timing=False):
            assert record.ratio is None or record.ratio >= 1
            if record.algorithm == "a1" and record.ratio is not None:
                assert record.ratio <= 2


@pytest.mark.parametrize(
    "ratio, places, expected",
    [
        (Fraction(5, 3), 6, "1.666667"),
        (Fraction(1), 6, "1.000000"),
        (Fraction(2000, 1002), 6, "1.996008"),
        (Fraction(1, 8), 2, "0.12"),
        (Fraction(7, 2), 0, "4"),
        (None, 6, ""),
    ],
)
def test_format_ratio(ratio, places, expected) -> None:
    assert format_ratio(ratio, places) == expected


def test_oversized_exact_search_only_drops_its_row(caplog) -> None:
    instance = random_instance(11, 20, 20, 4)
    with caplog.at_level(logging.WARNING):
        records = bench_instance("big", instance, ["spt", "a1", "exact-bf"], timing=False)
    assert [r.algorithm for r in records] == ["spt", "a1"]
    assert all(r.optimum is not None and r.ratio >= 1 for r in records)
    assert "skipping exact-bf" in caplog.text


def test_oversized_file_keeps_heuristic_rows(tmp_path) -> None:
    instance = random_instance(11, 20, 20, 4)
    (tmp_path / "big.json").write_text(json.dumps(instance_to_dict(instance)))
    records = run_bench(instance_files(str(tmp_path)), ["a1", "exact-bf"], timing=False)
    assert [(r.instance_id, r.algorithm) for r in records] == [("big", "a1")]
