"""Exhaustive enumeration of small graphs and the verification suites built on it."""

from .enumerate import ENUMERATION_LIMIT, PREDICATES, count_classes, enumerate_graphs
from .suites import (
    SUITES,
    Finding,
    VerificationReport,
    run_all,
    run_suite,
    suite_bounds,
    suite_catalog,
    suite_girth_bounds,
    suite_outerplanar_characterization,
    suite_p15_rigidity,
    suite_plesnik,
    suite_targets,
)

__all__ = [
    "ENUMERATION_LIMIT",
    "PREDICATES",
    "count_classes",
    "enumerate_graphs",
    "SUITES",
    "Finding",
    "VerificationReport",
    "run_all",
    "run_suite",
    "suite_bounds",
    "suite_catalog",
    "suite_girth_bounds",
    "suite_outerplanar_characterization",
    "suite_p15_rigidity",
    "suite_plesnik",
    "suite_targets",
]
