#!/usr/bin/env python3

"""Solver dispatch and approximation-ratio benchmarks.

:func:`run_bench` solves every instance file with each requested
algorithm, optionally compares against the subset DP optimum, and
:func:`render_csv` turns the records into a CSV report. Ratios stay
:class:`~fractions.Fraction` until they are printed.

"""

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .approx import solve_a1, solve_spt
from .codec import loads_instance
from .errors import InvalidParameter, SchedulingError, TooLarge
from .exact import BRUTE_FORCE_LIMIT, DP_LIMIT, solve_brute_force, solve_subset_dp
from .model import evaluate

log = logging.getLogger(__name__)

ALGORITHMS = ("spt", "a1", "exact-bf", "exact-dp")

ORACLES = ("exact-dp", "none")

CSV_HEADER = ("instance_id", "n", "algorithm", "total", "optimum", "ratio", "wall_ms")


def solve(instance, algorithm, brute_force_limit=BRUTE_FORCE_LIMIT,
          dp_limit=DP_LIMIT, workers=1):
    """Return the schedule ``algorithm`` finds for ``instance``.

    :raises InvalidParameter: for an unknown algorithm name

    """
    if algorithm == "spt":
        return solve_spt(instance)
    if algorithm == "a1":
        return solve_a1(instance).schedule
    if algorithm == "exact-bf":
        return solve_brute_force(instance, brute_force_limit, workers).schedule
    if algorithm == "exact-dp":
        return solve_subset_dp(instance, dp_limit).schedule
    raise InvalidParameter(f"unknown algorithm {algorithm!r}, use one of {', '.join(ALGORITHMS)}")


@dataclass(frozen=True)
class BenchRecord:
    """One algorithm's result on one instance."""

    instance_id: str
    n: int
    algorithm: str
    total: int
    optimum: Optional[int]
    ratio: Optional[Fraction]
    wall_time: float

    @property
    def sort_key(self):
        return (self.instance_id, self.algorithm)


def _ratio(total, optimum):
    if optimum is None:
        return None
    if optimum == 0:
        return Fraction(1) if total == 0 else None
    return Fraction(total, optimum)


def bench_instance(instance_id, instance, algorithms, oracle="exact-dp",
                   brute_force_limit=BRUTE_FORCE_LIMIT, dp_limit=DP_LIMIT, timing=True):
    """Run ``algorithms`` on one instance and return its records.

    An exact algorithm refusing the instance size only drops its own row.

    :raises InfeasibleJob: if a job's delta exceeds ``ml_max``

    """
    optimum = None
    if oracle == "exact-dp":
        try:
            optimum = solve_subset_dp(instance, dp_limit).best_total
        except TooLarge as err:
            log.warning("%s: no optimum, %s", instance_id, err)

    records = []
    for algorithm in algorithms:
        start = time.perf_counter()
        try:
            schedule = solve(instance, algorithm, brute_force_limit, dp_limit)
        except TooLarge as err:
            log.warning("%s: skipping %s, %s", instance_id, algorithm, err)
            continue
        elapsed = time.perf_counter() - start if timing else 0.0
        total = evaluate(instance, schedule).total
        ratio = _ratio(total, optimum)
        if ratio is not None and ratio < 1:
            log.error("%s: %s total %d is below the optimum %d", instance_id, algorithm, total, optimum)
        if algorithm == "a1" and ratio is not None and ratio > 2:
            log.error("%s: a1 ratio %s exceeds 2", instance_id, ratio)
        records.append(BenchRecord(instance_id, instance.n, algorithm, total,
                                   optimum, ratio, elapsed))
    return records


def _bench_file(task):
    path, algorithms, oracle, limits, timing = task
    instance_id = os.path.splitext(os.path.basename(path))[0]
    try:
        with open(path, encoding="utf-8") as f:
            instance = loads_instance(f.read())
        return bench_instance(instance_id, instance, algorithms, oracle,
                              limits[0], limits[1], timing), None
    except (OSError, SchedulingError) as err:
        return [], f"skipping {path}: {err}"


def instance_files(directory):
    """JSON files directly inside ``directory``, sorted by name.

    Sidecar ``*.meta.json`` files are left out.

    """
    names = sorted(os.listdir(directory))
    return [
        os.path.join(directory, name) for name in names
        if name.endswith(".json") and not name.endswith(".meta.json")
    ]


def run_bench(paths, algorithms, oracle="exact-dp", workers=1,
              brute_force_limit=BRUTE_FORCE_LIMIT, dp_limit=DP_LIMIT, timing=True):
    """Benchmark every instance file in ``paths``.

    Files that cannot be read, parsed or solved are skipped with a
    warning. The records come back sorted by ``(instance_id, algorithm)``.

    :raises InvalidParameter: for an unknown algorithm or oracle

    """
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise InvalidParameter(f"unknown algorithm {algorithm!r}")
    if oracle not in ORACLES:
        raise InvalidParameter(f"unknown oracle {oracle!r}, use one of {', '.join(ORACLES)}")

    limits = (brute_force_limit, dp_limit)
    tasks = [(path, tuple(algorithms), oracle, limits, timing) for path in paths]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_bench_file, tasks))
    else:
        results = [_bench_file(task) for task in tasks]

    records = []
    for found, warning in results:
        if warning:
            log.warning("%s", warning)
        records.extend(found)
    records.sort(key=lambda r: r.sort_key)
    log.debug("bench: %d files, %d records", len(paths), len(records))
    return records


def format_ratio(ratio, places=6):
    """Render ``ratio`` with exactly ``places`` decimals, rounding half to even."""
    if ratio is None:
        return ""
    scale = 10 ** places
    q = round(ratio * scale)
    if places == 0:
        return str(q)
    return f"{q // scale}.{q % scale:0{places}d}"


def render_csv(records, places=6, with_summary=True):
    """CSV report with one row per record and a ``MAX`` row per algorithm.

    Summary rows are written only for algorithms that have a ratio.

    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    worst = {}
    for r in records:
        writer.writerow([
            r.instance_id,
            r.n,
            r.algorithm,
            r.total,
            "" if r.optimum is None else r.optimum,
            format_ratio(r.ratio, places),
            f"{r.wall_time * 1000:.3f}" if r.wall_time else "0",
        ])
        if r.ratio is not None:
            worst[r.algorithm] = max(worst.get(r.algorithm, r.ratio), r.ratio)

    if with_summary:
        for algorithm in sorted(worst):
            writer.writerow(["MAX", "", algorithm, "", "", format_ratio(worst[algorithm], places), ""])
    return out.getvalue()
