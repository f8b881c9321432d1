"""The unified ask/tell optimizer contract and the run loop.

Every algorithm in the library is a subclass of :class:`Optimizer` and is
driven by the same three calls: ``ask()`` proposes a contiguous block of
candidate solutions, the caller evaluates them (after clipping to the box
with :func:`repair_to_bounds`), and ``tell()`` feeds the fitness values back.
``run_optimizer`` is the standard loop around that contract with the
termination triple, verbose printing, and convergence tracing.

Boundary handling is clip-at-evaluation-only: the optimizer's internal state
keeps unclipped vectors, the clip affects the evaluated point.  Fitness
values passed to ``tell`` are assumed to belong to the repaired candidates;
best-so-far bookkeeping therefore records the repaired vector.
"""

import time
from abc import ABC, abstractmethod

import numpy as np

from .errors import (
    AlreadyTerminated,
    FitnessEvaluationError,
    InvalidOption,
    LengthMismatch,
    NaNFitness,
)
from .problem import Problem, RunOptions, RunResults, TerminationReason, TracePoint
from .rng import RngStream, derive_stream


def repair_to_bounds(x, problem: Problem) -> np.ndarray:
    """Coordinate-wise clip of ``x`` into the problem box.

    Affects the evaluated point only; optimizer state keeps the unclipped x.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != problem.ndim_problem:
        raise LengthMismatch(
            f"x has trailing dimension {x.shape[-1]}, expected {problem.ndim_problem}"
        )
    return np.clip(x, problem.lower_boundary, problem.upper_boundary)


class Optimizer(ABC):
    """Base class: owns RNG streams, evaluation accounting, and best-so-far.

    Subclasses implement ``_propose()`` (return an ``n x d`` candidate block)
    and ``_update(candidates, values)`` (apply the variant's model update).
    """

    #: registry name, filled in by subclasses
    variant_id: str = ""

    def __init__(self, problem: Problem, options):
        if not isinstance(problem, Problem):
            raise InvalidOption("problem must be built via build_problem()")
        self.problem = problem
        self.options = RunOptions.coerce(options)
        self.ndim = problem.ndim_problem
        self._streams: dict[str, RngStream] = {}
        self.rng_init = self.stream("init")
        self.rng_sample = self.stream("sample")
        self.rng_shuffle = self.stream("shuffle")

        if self.options.x is not None:
            x0 = np.asarray(self.options.x, dtype=float)
            if x0.shape != (self.ndim,):
                raise InvalidOption(
                    f"options.x has shape {x0.shape}, expected ({self.ndim},)"
                )
            if not np.all(np.isfinite(x0)):
                raise InvalidOption("options.x contains non-finite entries")
            self.x0 = x0.copy()
        else:
            self.x0 = self.rng_init.uniform(
                problem.lower_boundary, problem.upper_boundary
            )
        if self.options.sigma is not None:
            self.sigma0 = float(self.options.sigma)
        else:
            self.sigma0 = float(np.min(problem.boundary_range)) / 3.0

        self.n_function_evaluations = 0
        self.generation = 0
        self.best_so_far_x = None
        self.best_so_far_y = float("inf")
        self.termination_reason = None
        self._early_stop = False
        self._pending = None

    # ------------------------------------------------------------------ rng
    def stream(self, label: str) -> RngStream:
        """The labeled substream of this state's master seed (cached)."""
        if label not in self._streams:
            self._streams[label] = derive_stream(self.options.seed_rng, label)
        return self._streams[label]

    # ------------------------------------------------------------- ask/tell
    def ask(self) -> np.ndarray:
        """Propose the next candidate block (one contiguous n x d array)."""
        if self.termination_reason is not None:
            raise AlreadyTerminated(
                f"{self.variant_id} already terminated: {self.termination_reason}"
            )
        candidates = np.ascontiguousarray(self._propose(), dtype=float)
        if candidates.ndim != 2 or candidates.shape[1] != self.ndim:
            raise LengthMismatch(
                f"_propose returned shape {candidates.shape}, expected (n, {self.ndim})"
            )
        self._pending = candidates
        return candidates

    def tell(self, candidates, fitness_values) -> "Optimizer":
        """Ingest fitness values for a previously asked candidate block."""
        candidates = np.asarray(candidates, dtype=float)
        if candidates.ndim == 1:
            candidates = candidates[None, :]
        values = np.asarray(fitness_values, dtype=float).ravel()
        if len(values) != len(candidates):
            raise LengthMismatch(
                f"{len(values)} fitness values for {len(candidates)} candidates"
            )
        if np.any(np.isnan(values)) or np.any(np.isneginf(values)):
            raise NaNFitness("fitness values must be finite or +inf")
        improved = values < self.best_so_far_y
        if np.any(improved):
            j = int(np.argmin(values))
            self.best_so_far_y = float(values[j])
            self.best_so_far_x = repair_to_bounds(candidates[j], self.problem)
        self._update(candidates, self._ranking_values(candidates, values))
        self.n_function_evaluations += len(values)
        self.generation += 1
        self._pending = None
        return self

    def _ranking_values(self, candidates: np.ndarray, values: np.ndarray) -> np.ndarray:
        """Fitness values as seen by the model update.

        A candidate outside the box had its fitness taken at the clipped
        point, which is flat in the violated coordinates; to keep the
        unclipped state anchored to the box, such candidates are ranked
        below every in-box candidate, ordered by violation.  The reordering
        depends only on feasibility and fitness ranks, so rank-based updates
        stay invariant under monotone fitness transforms.  Best-so-far
        bookkeeping always uses the raw values.
        """
        violation = np.sum(
            np.maximum(candidates - self.problem.upper_boundary, 0.0)
            + np.maximum(self.problem.lower_boundary - candidates, 0.0),
            axis=1,
        )
        infeasible = violation > 0.0
        if not np.any(infeasible):
            return values
        feasible_values = values[~infeasible]
        finite = feasible_values[np.isfinite(feasible_values)]
        base = float(finite.max()) if len(finite) else 0.0
        adjusted = values.copy()
        adjusted[infeasible] = base + violation[infeasible]
        return adjusted

    @abstractmethod
    def _propose(self) -> np.ndarray:
        """Return the next candidate block; draws come from labeled streams."""

    @abstractmethod
    def _update(self, candidates: np.ndarray, values: np.ndarray) -> None:
        """Apply the variant-specific model update."""

    # ------------------------------------------------------------ reporting
    @property
    def step_size_like(self) -> float:
        """A representative step-size scale for progress lines (NaN if none)."""
        return float(getattr(self, "sigma", float("nan")))

    def model_memory_bytes(self) -> int:
        """Bytes held in ndarray model state (pending candidate blocks excluded)."""
        return _ndarray_bytes(self, set())

    def optimize(self) -> RunResults:
        """Run the standard loop on this state (see :func:`run_optimizer`)."""
        return _run_loop(self)

    def __repr__(self):
        return (
            f"<{type(self).__name__} gen={self.generation} "
            f"evals={self.n_function_evaluations} best={self.best_so_far_y:.6e}>"
        )


def _ndarray_bytes(obj, seen) -> int:
    if id(obj) in seen:
        return 0
    seen.add(id(obj))
    if isinstance(obj, np.ndarray):
        return obj.nbytes
    if isinstance(obj, Optimizer):
        total = 0
        for key, value in obj.__dict__.items():
            if key in ("_pending", "problem", "options"):
                continue
            total += _ndarray_bytes(value, seen)
        return total
    if isinstance(obj, dict):
        return sum(_ndarray_bytes(v, seen) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return sum(_ndarray_bytes(v, seen) for v in obj)
    return 0


# ------------------------------------------------------------- operations
def ask(state: Optimizer) -> np.ndarray:
    return state.ask()


def tell(state: Optimizer, candidates, fitness_values) -> Optimizer:
    return state.tell(candidates, fitness_values)


def check_termination(state: Optimizer, options, elapsed: float):
    """First triggered reason, priority FitnessThreshold > MaxEvaluations >
    MaxRuntime (> EarlyStop); None if the run should continue."""
    options = RunOptions.coerce(options)
    if (
        options.fitness_threshold is not None
        and state.best_so_far_y <= options.fitness_threshold
    ):
        return TerminationReason.FITNESS_THRESHOLD
    if (
        options.max_function_evaluations is not None
        and state.n_function_evaluations >= options.max_function_evaluations
    ):
        return TerminationReason.MAX_EVALUATIONS
    if options.max_runtime is not None and elapsed >= options.max_runtime:
        return TerminationReason.MAX_RUNTIME
    if state._early_stop:
        return TerminationReason.EARLY_STOP
    return None


def _run_loop(state: Optimizer) -> RunResults:
    problem, options = state.problem, state.options
    fitness = problem.fitness_function
    start = time.monotonic()
    trace: list[TracePoint] = []
    running_best = state.best_so_far_y

    while True:
        elapsed = time.monotonic() - start
        reason = check_termination(state, options, elapsed)
        if reason is not None:
            state.termination_reason = reason
            break
        candidates = state.ask()
        if options.max_function_evaluations is not None:
            remaining = options.max_function_evaluations - state.n_function_evaluations
            candidates = candidates[:remaining]
        repaired = repair_to_bounds(candidates, problem)
        values = np.empty(len(candidates))
        for j in range(len(candidates)):
            try:
                values[j] = fitness(repaired[j])
            except Exception as exc:
                count = state.n_function_evaluations + j
                raise FitnessEvaluationError(
                    f"fitness function raised after {count} evaluations: {exc!r}",
                    count,
                ) from exc
        evals_before = state.n_function_evaluations
        state.tell(candidates, values)
        elapsed = time.monotonic() - start
        # Trace every improvement at its own evaluation index ...
        for j in range(len(values)):
            if values[j] < running_best:
                running_best = float(values[j])
                trace.append(TracePoint(evals_before + j + 1, running_best, elapsed))
        # ... and every generation boundary (decimated).
        if state.generation % options.trace_decimation == 0:
            point = TracePoint(
                state.n_function_evaluations, state.best_so_far_y, elapsed
            )
            if not trace or trace[-1] != point:
                trace.append(point)
        if options.verbose and state.generation % options.verbose == 0:
            print(
                f"gen={state.generation} evals={state.n_function_evaluations} "
                f"best={state.best_so_far_y:.6e} sigma={state.step_size_like:.3e}"
            )

    elapsed = time.monotonic() - start
    final = TracePoint(state.n_function_evaluations, state.best_so_far_y, elapsed)
    if not trace or trace[-1][:2] != final[:2]:
        trace.append(final)
    return RunResults(
        best_so_far_x=state.best_so_far_x,
        best_so_far_y=state.best_so_far_y,
        n_function_evaluations=state.n_function_evaluations,
        runtime_seconds=elapsed,
        termination_reason=state.termination_reason,
        trace=trace,
    )


def run_optimizer(variant_id, problem: Problem, options) -> RunResults:
    """Create the named optimizer and run the ask/evaluate/tell loop."""
    from .registry import create_optimizer

    state = create_optimizer(variant_id, problem, options)
    return _run_loop(state)
