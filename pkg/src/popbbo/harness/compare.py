"""Optimizer comparison tables over a grid of benchmark instances.

Per instance, the winner is the optimizer with the lowest median final
best value; ties go to fewer median evaluations, then name order.  All
cells must share the same termination settings.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from ..core.errors import BboError
from .trials import TrialConfig, run_trials


class MismatchedTermination(BboError):
    """Comparison cells disagree on the termination triple."""


@dataclass
class CellSummary:
    optimizer: str
    instance: str
    median_best: float
    median_evals: float


@dataclass
class ComparisonTable:
    optimizers: list
    instances: list
    cells: dict = field(default_factory=dict)  # (optimizer, instance) -> CellSummary
    winners: dict = field(default_factory=dict)  # instance -> optimizer
    wins: dict = field(default_factory=dict)  # optimizer -> count

    def text(self) -> str:
        lines = []
        width = max(len(o) for o in self.optimizers) + 2
        header = "instance".ljust(24) + "".join(o.ljust(width + 12) for o in self.optimizers)
        lines.append(header)
        for inst in self.instances:
            row = inst.ljust(24)
            for opt in self.optimizers:
                cell = self.cells[(opt, inst)]
                mark = "*" if self.winners[inst] == opt else " "
                row += f"{cell.median_best:.6e}{mark}".ljust(width + 12)
            lines.append(row)
        lines.append("")
        for opt in self.optimizers:
            lines.append(f"wins[{opt}] = {self.wins[opt]}")
        return "\n".join(lines)

    def write_csv(self, path):
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["instance"]
                + [f"{o}_median_best" for o in self.optimizers]
                + [f"{o}_median_evals" for o in self.optimizers]
                + ["winner"]
            )
            for inst in self.instances:
                row = [inst]
                row += [repr(self.cells[(o, inst)].median_best) for o in self.optimizers]
                row += [repr(self.cells[(o, inst)].median_evals) for o in self.optimizers]
                row.append(self.winners[inst])
                writer.writerow(row)
            writer.writerow([])
            writer.writerow(["optimizer", "wins"])
            for opt in self.optimizers:
                writer.writerow([opt, self.wins[opt]])


def pick_winner(summaries) -> str:
    """Lowest median best; ties by fewer median evals, then name order."""
    return min(
        summaries, key=lambda s: (s.median_best, s.median_evals, s.optimizer)
    ).optimizer


def table_from_cells(optimizers, instances, cells) -> ComparisonTable:
    """Assemble winners and win counts from per-cell medians."""
    table = ComparisonTable(list(optimizers), list(instances), dict(cells))
    table.wins = {opt: 0 for opt in table.optimizers}
    for inst in table.instances:
        summaries = [table.cells[(opt, inst)] for opt in table.optimizers]
        winner = pick_winner(summaries)
        table.winners[inst] = winner
        table.wins[winner] += 1
    return table


def compare_optimizers(configs) -> ComparisonTable:
    """Run every config cell and build the ranking table.

    ``configs`` is a list of TrialConfig covering an M x F grid; all cells
    must share identical termination settings.
    """
    configs = list(configs)
    if not configs:
        raise BboError("compare_optimizers needs at least one cell")
    triple = configs[0].termination_triple()
    for cfg in configs[1:]:
        if cfg.termination_triple() != triple:
            raise MismatchedTermination(
                f"cell ({cfg.optimizer}, {cfg.instance}) uses {cfg.termination_triple()}, "
                f"expected {triple}"
            )
    optimizers, instances, cells = [], [], {}
    for cfg in configs:
        if cfg.optimizer not in optimizers:
            optimizers.append(cfg.optimizer)
        if cfg.instance not in instances:
            instances.append(cfg.instance)
        trial_set = run_trials(cfg)
        cells[(cfg.optimizer, cfg.instance)] = CellSummary(
            optimizer=cfg.optimizer,
            instance=cfg.instance,
            median_best=float(np.median(trial_set.final_bests)),
            median_evals=float(np.median(trial_set.final_evals)),
        )
    missing = [
        (o, i) for o in optimizers for i in instances if (o, i) not in cells
    ]
    if missing:
        raise BboError(f"comparison grid is incomplete; missing cells: {missing}")
    return table_from_cells(optimizers, instances, cells)


def parse_compare_config(path) -> list:
    """Parse the key = value comparison config into a list of TrialConfig.

    Recognized keys: optimizers, instances (comma lists); trials, seed,
    fitness_threshold, max_evals, max_runtime, population_size, sigma,
    x_fill, out_dir.
    """
    values = {}
    with open(path) as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise BboError(f"{path}:{line_number}: expected key = value")
            key, _, raw = line.partition("=")
            values[key.strip().lower()] = raw.strip()
    if "optimizers" not in values or "instances" not in values:
        raise BboError(f"{path}: both 'optimizers' and 'instances' are required")

    def _get(key, cast, default):
        if key not in values or values[key].lower() in ("", "none"):
            return default
        return cast(values[key])

    optimizers = [o.strip() for o in values["optimizers"].split(",") if o.strip()]
    instances = [i.strip() for i in values["instances"].split(",") if i.strip()]
    shared = dict(
        n_trials=_get("trials", int, 3),
        base_seed=_get("seed", int, 0),
        fitness_threshold=_get("fitness_threshold", float, 1e-10),
        max_function_evaluations=_get("max_evals", int, None),
        max_runtime=_get("max_runtime", float, None),
        population_size=_get("population_size", int, None),
        sigma=_get("sigma", float, None),
        x_fill=_get("x_fill", float, None),
    )
    return [
        TrialConfig(optimizer=o, instance=i, **shared)
        for o in optimizers
        for i in instances
    ]
