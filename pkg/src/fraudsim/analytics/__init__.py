from .cohort import CohortSpec, CohortSpecError, default_cohort_spec, generate_cohort, load_cohort_spec
from .stats import StatEntry, TestEntry, descriptive_stats, welch_t_test
from .report import InsightReport, build_report, write_report

__all__ = [
    "CohortSpec",
    "CohortSpecError",
    "default_cohort_spec",
    "load_cohort_spec",
    "generate_cohort",
    "StatEntry",
    "TestEntry",
    "descriptive_stats",
    "welch_t_test",
    "InsightReport",
    "build_report",
    "write_report",
]
