"""Golden-trace recording and checking for repeatability regression.

A golden file pins (optimizer, instance, seed, termination) together with
checkpoints of the best-so-far value resampled onto a fixed evaluation grid
(last value carried forward).  Checking re-runs the configuration and
compares each checkpoint under the file's tolerance mode: ``bit-exact`` or
``relative`` (1e-9).
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from ..core.errors import BboError
from ..core.problem import RunOptions
from ..core.optimizer import run_optimizer
from .aggregate import carry_forward
from .specs import fill_vector, resolve_instance

RELATIVE_TOLERANCE = 1e-9
MAX_CHECKPOINTS = 200


class GoldenParseError(BboError):
    """A golden trace file is missing or malformed."""


@dataclass
class GoldenTrace:
    optimizer: str
    instance: str
    seed: int
    tolerance_mode: str = "bit-exact"  # or "relative"
    fitness_threshold: Optional[float] = 1e-10
    max_function_evaluations: Optional[int] = None
    max_runtime: Optional[float] = None
    x_fill: Optional[float] = None
    sigma: Optional[float] = None
    population_size: Optional[int] = None
    checkpoints: list = field(default_factory=list)  # [(n_evals, best_y), ...]

    def to_json(self) -> dict:
        return {
            "optimizer": self.optimizer,
            "instance": self.instance,
            "seed": self.seed,
            "tolerance_mode": self.tolerance_mode,
            "fitness_threshold": self.fitness_threshold,
            "max_function_evaluations": self.max_function_evaluations,
            "max_runtime": self.max_runtime,
            "x_fill": self.x_fill,
            "sigma": self.sigma,
            "population_size": self.population_size,
            "checkpoints": [[int(e), float(y)] for e, y in self.checkpoints],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "GoldenTrace":
        try:
            trace = cls(
                optimizer=payload["optimizer"],
                instance=payload["instance"],
                seed=int(payload["seed"]),
                tolerance_mode=payload.get("tolerance_mode", "bit-exact"),
                fitness_threshold=payload.get("fitness_threshold"),
                max_function_evaluations=payload.get("max_function_evaluations"),
                max_runtime=payload.get("max_runtime"),
                x_fill=payload.get("x_fill"),
                sigma=payload.get("sigma"),
                population_size=payload.get("population_size"),
                checkpoints=[(int(e), float(y)) for e, y in payload["checkpoints"]],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GoldenParseError(f"malformed golden trace: {exc}") from exc
        if trace.tolerance_mode not in ("bit-exact", "relative"):
            raise GoldenParseError(
                f"tolerance_mode must be bit-exact or relative, got {trace.tolerance_mode!r}"
            )
        evals = [e for e, _ in trace.checkpoints]
        if any(b <= a for a, b in zip(evals, evals[1:])):
            raise GoldenParseError("checkpoints must be strictly increasing in evals")
        return trace


def _checkpoint_grid(final_evals: int):
    stride = max(1, math.ceil(final_evals / MAX_CHECKPOINTS))
    grid = list(range(stride, final_evals + 1, stride))
    if not grid or grid[-1] != final_evals:
        grid.append(final_evals)
    return grid


def _run(config: GoldenTrace):
    target = resolve_instance(config.instance)
    options = RunOptions(
        seed_rng=config.seed,
        fitness_threshold=config.fitness_threshold,
        max_function_evaluations=config.max_function_evaluations,
        max_runtime=config.max_runtime,
        x=fill_vector(config.x_fill, target.problem.ndim_problem),
        sigma=config.sigma,
        population_size=config.population_size,
    )
    return run_optimizer(config.optimizer, target.problem, options)


def checkpoints_from_trace(trace, final_evals: int):
    grid = _checkpoint_grid(final_evals)
    values = carry_forward(trace, grid)
    return [(int(e), float(y)) for e, y in zip(grid, values)]


def record_golden(config: GoldenTrace, path: str) -> GoldenTrace:
    """Run the configuration and write its golden checkpoints to ``path``."""
    result = _run(config)
    config.checkpoints = checkpoints_from_trace(
        result.trace, result.n_function_evaluations
    )
    with open(path, "w") as handle:
        json.dump(config.to_json(), handle, indent=2)
        handle.write("\n")
    return config


def load_golden(path: str) -> GoldenTrace:
    try:
        with open(path) as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise GoldenParseError(f"cannot read golden file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GoldenParseError(f"golden file {path!r} is not valid JSON: {exc}") from exc
    return GoldenTrace.from_json(payload)


def _values_match(expected: float, actual: float, mode: str) -> bool:
    if mode == "bit-exact":
        return expected == actual or (math.isnan(expected) and math.isnan(actual))
    scale = max(abs(expected), abs(actual), 1e-300)
    return abs(expected - actual) <= RELATIVE_TOLERANCE * scale


@dataclass
class GoldenReport:
    passed: bool
    message: str
    first_divergence: Optional[int] = None  # checkpoint index


def check_golden(path: str) -> GoldenReport:
    """Re-run a golden configuration and compare its checkpoints."""
    golden = load_golden(path)
    result = _run(golden)
    actual = checkpoints_from_trace(result.trace, result.n_function_evaluations)
    if len(actual) != len(golden.checkpoints):
        return GoldenReport(
            False,
            f"checkpoint count differs: expected {len(golden.checkpoints)}, "
            f"got {len(actual)}",
            first_divergence=min(len(actual), len(golden.checkpoints)),
        )
    for k, ((e_exp, y_exp), (e_act, y_act)) in enumerate(
        zip(golden.checkpoints, actual)
    ):
        if e_exp != e_act or not _values_match(y_exp, y_act, golden.tolerance_mode):
            return GoldenReport(
                False,
                f"first divergence at checkpoint {k}: expected "
                f"({e_exp}, {y_exp!r}), got ({e_act}, {y_act!r})",
                first_divergence=k,
            )
    return GoldenReport(True, f"all {len(actual)} checkpoints match")
