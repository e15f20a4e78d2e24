"""
Experiment harness: reproducible sweeps that produce auditable reports.
"""

from .experiments import (
    BOUNDARY_MAX_N,
    DIRAC_MAX_N,
    SWEEP_MAX_N,
    InstanceSpec,
    extremal_specs,
    run_dirac_sampling,
    run_extremal_sweep,
    run_instance,
    run_matching_lemma,
    run_stability_boundary,
    weakly_stable_mixture,
)
from .report import (
    BACKING_CERTIFICATE,
    BACKING_SOLVER,
    NEGATIVE_BACKINGS,
    audit_report,
    finalize,
    merge_records,
    search_record,
)

__all__ = [
    "BOUNDARY_MAX_N",
    "DIRAC_MAX_N",
    "SWEEP_MAX_N",
    "InstanceSpec",
    "extremal_specs",
    "run_dirac_sampling",
    "run_extremal_sweep",
    "run_instance",
    "run_matching_lemma",
    "run_stability_boundary",
    "weakly_stable_mixture",
    "BACKING_CERTIFICATE",
    "BACKING_SOLVER",
    "NEGATIVE_BACKINGS",
    "audit_report",
    "finalize",
    "merge_records",
    "search_record",
]
