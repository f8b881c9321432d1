"""Seeded multi-trial benchmarking: run, persist, reload.

Trial i of a set uses seed = base_seed + i, so any single trial can be
reproduced standalone.  Each trial writes one JSON result file (config echo,
results, library version, wall-clock metadata) and one CSV trace with
columns ``n_evals,best_y,elapsed_s``.
"""

import csv
import json
import os
import time
from dataclasses import dataclass, field
from typing import Optional

from .. import __version__
from ..core.errors import BboError
from ..core.problem import RunOptions, RunResults, TracePoint
from ..core.registry import get_handle
from ..core.optimizer import run_optimizer
from .specs import fill_vector, resolve_instance

SCHEMA_VERSION = 1

# re-exported under the harness vocabulary
from ..core.errors import UnknownVariant as UnknownOptimizer  # noqa: E402


class OutputDirNotWritable(BboError):
    """The trial output directory cannot be created or written."""


class EmptyTrialSet(BboError):
    """An aggregation was requested over zero trials."""


@dataclass
class TrialConfig:
    """Configuration of one seeded multi-trial experiment."""

    optimizer: str
    instance: str
    n_trials: int = 10
    base_seed: int = 0
    fitness_threshold: Optional[float] = 1e-10
    max_function_evaluations: Optional[int] = None
    max_runtime: Optional[float] = None
    out_dir: Optional[str] = None
    x_fill: Optional[float] = None
    sigma: Optional[float] = None
    population_size: Optional[int] = None
    verbose: int = 0

    def termination_triple(self):
        return (self.fitness_threshold, self.max_function_evaluations, self.max_runtime)

    def options_for_trial(self, trial_index: int, ndim: int) -> RunOptions:
        return RunOptions(
            seed_rng=self.base_seed + trial_index,
            fitness_threshold=self.fitness_threshold,
            max_function_evaluations=self.max_function_evaluations,
            max_runtime=self.max_runtime,
            x=fill_vector(self.x_fill, ndim),
            sigma=self.sigma,
            verbose=self.verbose,
            population_size=self.population_size,
        )


@dataclass
class TrialSet:
    """Results and traces of all trials of one config."""

    config: TrialConfig
    results: list = field(default_factory=list)
    traces: list = field(default_factory=list)
    library_version: str = __version__
    started_at: float = 0.0
    wall_seconds: float = 0.0

    @property
    def final_bests(self):
        return [r.best_so_far_y for r in self.results]

    @property
    def final_evals(self):
        return [r.n_function_evaluations for r in self.results]


def _trial_paths(out_dir: str, index: int):
    return (
        os.path.join(out_dir, f"trial_{index:03d}.json"),
        os.path.join(out_dir, f"trial_{index:03d}.csv"),
    )


def _write_trial(out_dir, index, config: TrialConfig, result: RunResults):
    json_path, csv_path = _trial_paths(out_dir, index)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "library_version": __version__,
        "optimizer": config.optimizer,
        "instance": config.instance,
        "trial_index": index,
        "seed_rng": config.base_seed + index,
        "fitness_threshold": config.fitness_threshold,
        "max_function_evaluations": config.max_function_evaluations,
        "max_runtime": config.max_runtime,
        "recorded_at_unix": time.time(),
        "results": result.as_dict(),
    }
    with open(json_path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n_evals", "best_y", "elapsed_s"])
        for point in result.trace:
            writer.writerow([point.n_evals, repr(point.best_y), f"{point.elapsed_s:.6f}"])


def run_trials(config: TrialConfig) -> TrialSet:
    """Run n_trials independent seeded trials and persist them (if out_dir)."""
    get_handle(config.optimizer)  # raises UnknownOptimizer before any evaluation
    target = resolve_instance(config.instance)
    if config.n_trials < 1:
        raise BboError(f"n_trials must be >= 1, got {config.n_trials}")
    out_dir = config.out_dir
    if out_dir is not None:
        try:
            os.makedirs(out_dir, exist_ok=True)
            probe = os.path.join(out_dir, ".write_probe")
            with open(probe, "w") as handle:
                handle.write("ok")
            os.remove(probe)
        except OSError as exc:
            raise OutputDirNotWritable(f"cannot write to {out_dir!r}: {exc}") from exc
    trial_set = TrialSet(config=config, started_at=time.time())
    t0 = time.monotonic()
    for i in range(config.n_trials):
        options = config.options_for_trial(i, target.problem.ndim_problem)
        result = run_optimizer(config.optimizer, target.problem, options)
        trial_set.results.append(result)
        trial_set.traces.append(result.trace)
        if out_dir is not None:
            _write_trial(out_dir, i, config, result)
    trial_set.wall_seconds = time.monotonic() - t0
    return trial_set


def load_trace_csv(path: str):
    """Read one persisted trace CSV back into TracePoint rows."""
    points = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header[:2] != ["n_evals", "best_y"]:
            raise BboError(f"{path}: not a trace CSV (header {header})")
        for row in reader:
            points.append(TracePoint(int(row[0]), float(row[1]), float(row[2])))
    return points


def load_trial_dir(directory: str):
    """Load all trace CSVs of a trial directory, sorted by trial index."""
    names = sorted(
        n for n in os.listdir(directory) if n.startswith("trial_") and n.endswith(".csv")
    )
    if not names:
        raise EmptyTrialSet(f"no trial CSVs found in {directory!r}")
    return [load_trace_csv(os.path.join(directory, n)) for n in names]
