"""Problem, run-option and result records for the unified optimizer API."""

import enum
import math
from dataclasses import dataclass, field, fields
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import DimensionMismatch, InvalidOption, InvertedBound, NonFiniteBound


def _as_boundary(value, ndim: int, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(ndim, float(arr))
    if arr.shape != (ndim,):
        raise DimensionMismatch(
            f"{name} has shape {arr.shape}, expected ({ndim},)"
        )
    if not np.all(np.isfinite(arr)):
        raise NonFiniteBound(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Problem:
    """A box-constrained minimization problem.

    ``fitness_function`` maps a length-``ndim_problem`` real vector to a real
    scalar and is to be minimized.  Bounds are finite with
    ``lower_boundary < upper_boundary`` coordinate-wise.
    """

    fitness_function: Callable[[np.ndarray], float]
    ndim_problem: int
    lower_boundary: np.ndarray
    upper_boundary: np.ndarray

    @property
    def boundary_range(self) -> np.ndarray:
        return self.upper_boundary - self.lower_boundary


def build_problem(fitness_function, ndim_problem, lower_boundary, upper_boundary) -> Problem:
    """Validate inputs and construct a :class:`Problem`.

    The fitness function is never called here.
    """
    if not callable(fitness_function):
        raise InvalidOption("fitness_function must be callable")
    ndim = int(ndim_problem)
    if ndim < 1:
        raise InvalidOption(f"ndim_problem must be >= 1, got {ndim_problem}")
    lower = _as_boundary(lower_boundary, ndim, "lower_boundary")
    upper = _as_boundary(upper_boundary, ndim, "upper_boundary")
    if np.any(lower >= upper):
        bad = int(np.argmax(lower >= upper))
        raise InvertedBound(
            f"lower_boundary >= upper_boundary at index {bad} "
            f"({lower[bad]} >= {upper[bad]})"
        )
    return Problem(fitness_function, ndim, lower, upper)


class TerminationReason(enum.Enum):
    FITNESS_THRESHOLD = "FitnessThreshold"
    MAX_EVALUATIONS = "MaxEvaluations"
    MAX_RUNTIME = "MaxRuntime"
    EARLY_STOP = "EarlyStop"

    def __str__(self):
        return self.value


class TracePoint(NamedTuple):
    """One convergence-trace sample."""

    n_evals: int
    best_y: float
    elapsed_s: float


@dataclass
class RunOptions:
    """Options controlling one optimization run.

    ``seed_rng`` is required; at least one of the termination triple
    (fitness_threshold, max_function_evaluations, max_runtime) must be
    active.  ``verbose`` prints one progress line every N generations
    (0 = silent).  ``population_size`` overrides the family default
    offspring/population count.  ``trace_decimation`` keeps every k-th
    generation-boundary trace entry (improvements are always kept).
    """

    seed_rng: int
    fitness_threshold: Optional[float] = 1e-10
    max_function_evaluations: Optional[int] = None
    max_runtime: Optional[float] = None
    x: Optional[np.ndarray] = None
    sigma: Optional[float] = None
    verbose: int = 0
    population_size: Optional[int] = None
    trace_decimation: int = 1

    @classmethod
    def coerce(cls, options) -> "RunOptions":
        """Accept a RunOptions instance or a plain mapping of option names."""
        if isinstance(options, cls):
            opts = options
        elif isinstance(options, dict):
            known = {f.name for f in fields(cls)}
            unknown = set(options) - known
            if unknown:
                raise InvalidOption(f"unknown option(s): {sorted(unknown)}")
            if "seed_rng" not in options:
                raise InvalidOption("seed_rng is required")
            opts = cls(**options)
        else:
            raise InvalidOption(f"options must be RunOptions or dict, got {type(options)}")
        opts.validate()
        return opts

    def validate(self):
        if self.seed_rng is None:
            raise InvalidOption("seed_rng is required")
        seed = int(self.seed_rng)
        if not 0 <= seed < 2**64:
            raise InvalidOption("seed_rng must be a 64-bit unsigned integer")
        if self.sigma is not None and not self.sigma > 0:
            raise InvalidOption(f"sigma must be > 0, got {self.sigma}")
        if self.max_function_evaluations is not None and self.max_function_evaluations < 1:
            raise InvalidOption("max_function_evaluations must be >= 1")
        if self.max_runtime is not None and not self.max_runtime > 0:
            raise InvalidOption("max_runtime must be > 0")
        if self.verbose < 0:
            raise InvalidOption("verbose must be >= 0")
        if self.trace_decimation < 1:
            raise InvalidOption("trace_decimation must be >= 1")
        if self.population_size is not None and self.population_size < 1:
            raise InvalidOption("population_size must be >= 1")
        threshold_active = self.fitness_threshold is not None and math.isfinite(
            self.fitness_threshold
        )
        evals_active = self.max_function_evaluations is not None and math.isfinite(
            self.max_function_evaluations
        )
        runtime_active = self.max_runtime is not None and math.isfinite(self.max_runtime)
        if not (threshold_active or evals_active or runtime_active):
            raise InvalidOption(
                "at least one of fitness_threshold, max_function_evaluations, "
                "max_runtime must be active"
            )


@dataclass
class RunResults:
    """Outcome of one run: best solution, accounting, and convergence trace."""

    best_so_far_x: np.ndarray
    best_so_far_y: float
    n_function_evaluations: int
    runtime_seconds: float
    termination_reason: TerminationReason
    trace: list = field(default_factory=list)

    def __getitem__(self, key):
        # Dict-style access mirrors the common options/results idiom.
        return getattr(self, key)

    def as_dict(self):
        return {
            "best_so_far_x": None
            if self.best_so_far_x is None
            else [float(v) for v in self.best_so_far_x],
            "best_so_far_y": float(self.best_so_far_y),
            "n_function_evaluations": int(self.n_function_evaluations),
            "runtime_seconds": float(self.runtime_seconds),
            "termination_reason": str(self.termination_reason),
        }
