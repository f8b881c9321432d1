"""Throughput and model-update cost measurement.

``throughput`` times the full ask/evaluate/tell loop for a wall-clock
duration and reports evaluations per second with the model-update cost
(ask + tell, fitness excluded) separated out.  ``measure_step_cost`` times
only the model update at a fixed generation count, which is what the
large-scale scaling checks regress against dimension.
"""

import time

import numpy as np

from ..core.errors import InvalidOption
from ..core.problem import RunOptions
from ..core.registry import create_optimizer
from ..core.optimizer import repair_to_bounds
from .specs import resolve_instance


def throughput(optimizer: str, instance: str, duration: float) -> dict:
    """Time the full loop for ``duration`` seconds (must be >= 1)."""
    if duration is None or duration < 1.0:
        raise InvalidOption(f"throughput duration must be >= 1 second, got {duration}")
    target = resolve_instance(instance)
    options = RunOptions(seed_rng=0, fitness_threshold=None, max_runtime=duration)
    state = create_optimizer(optimizer, target.problem, options)
    fitness = target.problem.fitness_function
    n_evals = 0
    n_generations = 0
    model_seconds = 0.0
    start = time.monotonic()
    while time.monotonic() - start < duration:
        t0 = time.monotonic()
        candidates = state.ask()
        model_seconds += time.monotonic() - t0
        repaired = repair_to_bounds(candidates, target.problem)
        values = np.array([fitness(row) for row in repaired])
        t0 = time.monotonic()
        state.tell(candidates, values)
        model_seconds += time.monotonic() - t0
        n_evals += len(values)
        n_generations += 1
    elapsed = time.monotonic() - start
    return {
        "optimizer": optimizer,
        "instance": instance,
        "seconds": elapsed,
        "evaluations": n_evals,
        "generations": n_generations,
        "evals_per_second": n_evals / elapsed if elapsed > 0 else 0.0,
        "model_update_seconds_per_generation": (
            model_seconds / n_generations if n_generations else 0.0
        ),
    }


def measure_step_cost(
    optimizer: str, ndim: int, n_generations: int = 10, warmup: int = 2, seed: int = 0
) -> float:
    """Average ask+tell seconds per generation on a plain d-dim sphere."""
    target = resolve_instance(f"sphere:{ndim}")
    options = RunOptions(seed_rng=seed, fitness_threshold=None, max_runtime=1e9)
    state = create_optimizer(optimizer, target.problem, options)
    fitness = target.problem.fitness_function

    def one_generation(timing: bool) -> float:
        t0 = time.perf_counter()
        candidates = state.ask()
        dt = time.perf_counter() - t0
        values = np.array([fitness(row) for row in candidates])
        t0 = time.perf_counter()
        state.tell(candidates, values)
        return dt + time.perf_counter() - t0

    for _ in range(warmup):
        one_generation(False)
    total = 0.0
    for _ in range(n_generations):
        total += one_generation(True)
    return total / n_generations


def loglog_slope(dims, costs) -> float:
    """Least-squares slope of log(cost) against log(dimension)."""
    logs_d = np.log(np.asarray(dims, dtype=float))
    logs_c = np.log(np.asarray(costs, dtype=float))
    slope, _ = np.polyfit(logs_d, logs_c, 1)
    return float(slope)
