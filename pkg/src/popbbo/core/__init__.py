"""Data model, unified ask/tell contract, RNG streams, and the registry."""

from .errors import (
    AlreadyTerminated,
    BboError,
    CapabilityError,
    DimensionMismatch,
    EmptyVector,
    FitnessEvaluationError,
    InvalidOption,
    InvertedBound,
    LengthMismatch,
    NaNFitness,
    NonFiniteBound,
    PopulationTooSmall,
    TooFewSamples,
    UnknownVariant,
)
from .optimizer import (
    Optimizer,
    ask,
    check_termination,
    repair_to_bounds,
    run_optimizer,
    tell,
)
from .problem import (
    Problem,
    RunOptions,
    RunResults,
    TerminationReason,
    TracePoint,
    build_problem,
)
from .registry import Family, OptimizerHandle, create_optimizer, get_handle, list_variants
from .rng import RngStream, derive_stream

__all__ = [
    "AlreadyTerminated",
    "BboError",
    "CapabilityError",
    "DimensionMismatch",
    "EmptyVector",
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
    "TracePoint",
    "UnknownVariant",
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
