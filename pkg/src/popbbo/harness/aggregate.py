"""Median-curve aggregation of convergence traces.

Traces are step-interpolated (last value carried forward) onto a shared
logarithmic evaluation grid with 32 points per decade; trials that
terminated early carry their final best forward.  The pointwise median
across trials is the reported curve.
"""

import math

import numpy as np

from .trials import EmptyTrialSet

GRID_POINTS_PER_DECADE = 32


def log_eval_grid(max_evals: int, points_per_decade: int = GRID_POINTS_PER_DECADE):
    """Logarithmic grid from 1 to max_evals inclusive."""
    if max_evals < 1:
        raise EmptyTrialSet("cannot build an evaluation grid without evaluations")
    n_steps = int(math.ceil(points_per_decade * math.log10(max(max_evals, 1)))) + 1
    grid = np.unique(
        np.concatenate(
            [10.0 ** (np.arange(n_steps) / points_per_decade), [float(max_evals)]]
        )
    )
    return grid[grid <= max_evals]


def carry_forward(trace, grid) -> np.ndarray:
    """Step-interpolate one trace onto the grid (last value carried forward).

    Grid points before the first recorded evaluation get +inf.
    """
    evals = np.asarray([p[0] for p in trace], dtype=float)
    bests = np.asarray([p[1] for p in trace], dtype=float)
    idx = np.searchsorted(evals, grid, side="right") - 1
    out = np.where(idx >= 0, bests[np.maximum(idx, 0)], np.inf)
    return out


def aggregate_median(traces, eval_grid=None):
    """Pointwise median curve of several traces on a shared log grid.

    Returns (grid, median_values).
    """
    traces = [t for t in traces]
    if not traces:
        raise EmptyTrialSet("median aggregation needs at least one trial")
    for trace in traces:
        if len(trace) == 0:
            raise EmptyTrialSet("a trial produced an empty trace")
    if eval_grid is None:
        max_evals = max(int(trace[-1][0]) for trace in traces)
        eval_grid = log_eval_grid(max_evals)
    eval_grid = np.asarray(eval_grid, dtype=float)
    rows = np.vstack([carry_forward(trace, eval_grid) for trace in traces])
    return eval_grid, np.median(rows, axis=0)


def write_curve_csv(path, grid, median_values):
    with open(path, "w") as handle:
        handle.write("n_evals,median_best_y\n")
        for g, m in zip(grid, median_values):
            handle.write(f"{float(g)!r},{float(m)!r}\n")
