"""CLI harness: seeded trials, median aggregation, comparison tables,
throughput measurement, and golden-trace repeatability checks."""

from .aggregate import aggregate_median, carry_forward, log_eval_grid, write_curve_csv
from .compare import (
    CellSummary,
    ComparisonTable,
    MismatchedTermination,
    compare_optimizers,
    parse_compare_config,
    pick_winner,
    table_from_cells,
)
from .golden import (
    GoldenParseError,
    GoldenReport,
    GoldenTrace,
    check_golden,
    load_golden,
    record_golden,
)
from .specs import InstanceParseError, InstanceTarget, resolve_instance
from .throughput import loglog_slope, measure_step_cost, throughput
from .trials import (
    EmptyTrialSet,
    OutputDirNotWritable,
    TrialConfig,
    TrialSet,
    UnknownOptimizer,
    load_trace_csv,
    load_trial_dir,
    run_trials,
)

__all__ = [
    "CellSummary",
    "ComparisonTable",
    "EmptyTrialSet",
    "GoldenParseError",
    "GoldenReport",
    "GoldenTrace",
    "InstanceParseError",
    "InstanceTarget",
    "MismatchedTermination",
    "OutputDirNotWritable",
    "TrialConfig",
    "TrialSet",
    "UnknownOptimizer",
    "aggregate_median",
    "carry_forward",
    "check_golden",
    "compare_optimizers",
    "load_golden",
    "load_trace_csv",
    "load_trial_dir",
    "log_eval_grid",
    "loglog_slope",
    "measure_step_cost",
    "parse_compare_config",
    "pick_winner",
    "record_golden",
    "resolve_instance",
    "run_trials",
    "table_from_cells",
    "throughput",
    "write_curve_csv",
]
