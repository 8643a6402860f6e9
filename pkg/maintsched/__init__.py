#!/usr/bin/env python3

"""Single-machine scheduling with job-dependent deterioration and partial maintenance."""
import os

# Model
from .model import (
    Evaluation,
    Instance,
    Job,
    MaintenanceActivity,
    Schedule,
    canonical_completions,
    canonical_schedule,
    canonical_total,
    evaluate,
    makespan_closed_form,
)

# Solvers
from .approx import (
    AuditReport,
    SplitSchedule,
    audit_lemma2,
    audit_structure,
    is_agreeable,
    local_improve,
    solve_a1,
    solve_spt,
)
from .exact import ExactResult, solve_brute_force, solve_subset_dp

# Reduction
from .reduction import (
    PartitionInstance,
    ReductionArtifacts,
    SwapCertificate,
    apply_swap_certificate,
    build_reduction,
    decide_partition_by_search,
    evaluate_pi0,
    extract_partition,
)

# Exceptions
from .errors import SchedulingError

with open(os.path.join(os.path.dirname(__file__), "version"), encoding="utf-8") as _fp:
    __version__ = _fp.read().strip()
del _fp
__title__ = "maintsched"

__all__ = [
    "AuditReport",
    "Evaluation",
    "ExactResult",
    "Instance",
    "Job",
    "MaintenanceActivity",
    "PartitionInstance",
    "ReductionArtifacts",
    "Schedule",
    "SchedulingError",
    "SplitSchedule",
    "SwapCertificate",
    "apply_swap_certificate",
    "audit_lemma2",
    "audit_structure",
    "build_reduction",
    "canonical_completions",
    "canonical_schedule",
    "canonical_total",
    "decide_partition_by_search",
    "evaluate",
    "evaluate_pi0",
    "extract_partition",
    "is_agreeable",
    "local_improve",
    "makespan_closed_form",
    "solve_a1",
    "solve_brute_force",
    "solve_spt",
    "solve_subset_dp",
]
