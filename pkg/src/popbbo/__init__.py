"""popbbo: population-based black-box optimization with a unified ask/tell
API, large-scale algorithm variants, and a seeded benchmark harness."""

from .core import (
    AlreadyTerminated,
    BboError,
    CapabilityError,
    DimensionMismatch,
    Family,
    FitnessEvaluationError,
    InvalidOption,
    InvertedBound,
    LengthMismatch,
    NaNFitness,
    NonFiniteBound,
    Optimizer,
    OptimizerHandle,
    PopulationTooSmall,
    Problem,
    RngStream,
    RunOptions,
    RunResults,
    TerminationReason,
    TooFewSamples,
    UnknownVariant,
    ask,
    build_problem,
    check_termination,
    create_optimizer,
    derive_stream,
    get_handle,
    list_variants,
    repair_to_bounds,
    run_optimizer,
    tell,
)

__version__ = "0.1.0"

__all__ = [
    "AlreadyTerminated",
    "BboError",
    "CapabilityError",
    "DimensionMismatch",
    "Family",
    "FitnessEvaluationError",
    "InvalidOption",
    "InvertedBound",
    "LengthMismatch",
    "NaNFitness",
    "NonFiniteBound",
    "Optimizer",
    "OptimizerHandle",
    "PopulationTooSmall",
    "Problem",
    "RngStream",
    "RunOptions",
    "RunResults",
    "TerminationReason",
    "TooFewSamples",
    "UnknownVariant",
    "__version__",
    "ask",
    "build_problem",
    "check_termination",
    "create_optimizer",
    "derive_stream",
    "get_handle",
    "list_variants",
    "repair_to_bounds",
    "run_optimizer",
    "tell",
]
