"""One representative per remaining family: simulated annealing, a
steady-state genetic algorithm, evolutionary programming, direct search
(Nelder-Mead, Hooke-Jeeves), and random search (pure random sampling and
Gaussian-smoothing gradient search).

The sequential methods (CSA, GENITOR, NM, HJ) ask one point per call after
their initialization batch; PRS asks one point and GS asks 2 * n_pairs
antithetic points per generation.
"""

import math

import numpy as np

from .core.optimizer import Optimizer


class CSA(Optimizer):
    """Coordinate-cycling simulated annealing with step adaptation.

    Moves cycle through the coordinates; worsening moves are accepted with
    probability exp(-df/T) drawn from the "accept" stream.  Every
    ``sweeps_per_adjust`` sweeps the per-coordinate steps are pushed toward
    a ~50% acceptance rate; every ``adjusts_per_cooling`` adjustments the
    temperature is multiplied by ``temperature_decay`` and the search
    restarts from the best point seen.
    """

    variant_id = "CSA"
    sweeps_per_adjust = 20
    adjusts_per_cooling = 5

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.temperature = 10.0
        self.temperature_decay = 0.85
        self.steps = 0.25 * problem.boundary_range.copy()
        self.rng_accept = self.stream("accept")
        self.current = self.x0.copy()
        self.current_y = None
        self.best_internal_x = self.x0.copy()
        self.best_internal_y = np.inf
        self.coord = 0
        self.sweeps_done = 0
        self.adjusts_done = 0
        self.accept_counts = np.zeros(self.ndim, dtype=int)
        self.n_accepted = 0
        self.n_worse_accepted = 0
        self.n_worse_proposed = 0

    @property
    def step_size_like(self):
        return float(np.mean(self.steps))

    def _propose(self):
        if self.current_y is None:
            return self.current[None, :].copy()
        move = self.current.copy()
        u = self.rng_sample.uniform(-1.0, 1.0)
        move[self.coord] += self.steps[self.coord] * u
        return move[None, :]

    def _adjust_steps(self):
        rates = self.accept_counts / self.sweeps_per_adjust
        grow = rates > 0.6
        shrink = rates < 0.4
        self.steps[grow] *= 1.0 + 2.0 * (rates[grow] - 0.6) / 0.4
        self.steps[shrink] /= 1.0 + 2.0 * (0.4 - rates[shrink]) / 0.4
        np.minimum(self.steps, self.problem.boundary_range, out=self.steps)
        self.accept_counts[:] = 0

    def _update(self, candidates, values):
        y = float(values[0])
        if self.current_y is None:
            self.current_y = y
            self.best_internal_x = candidates[0].copy()
            self.best_internal_y = y
            return
        delta = y - self.current_y
        if delta < 0:
            accept = True
        elif self.temperature <= 0:
            accept = False
        else:
            accept = self.rng_accept.random() < math.exp(-delta / self.temperature)
        if delta >= 0:
            self.n_worse_proposed += 1
            if accept:
                self.n_worse_accepted += 1
        if accept:
            self.current = candidates[0].copy()
            self.current_y = y
            self.accept_counts[self.coord] += 1
            self.n_accepted += 1
            if y < self.best_internal_y:
                self.best_internal_x = self.current.copy()
                self.best_internal_y = y
        self.coord += 1
        if self.coord == self.ndim:
            self.coord = 0
            self.sweeps_done += 1
            if self.sweeps_done == self.sweeps_per_adjust:
                self.sweeps_done = 0
                self._adjust_steps()
                self.adjusts_done += 1
                if self.adjusts_done == self.adjusts_per_cooling:
                    self.adjusts_done = 0
                    self.temperature *= self.temperature_decay
                    self.current = self.best_internal_x.copy()
                    self.current_y = self.best_internal_y


class GENITOR(Optimizer):
    """Steady-state GA: rank-based parent selection (linear bias 1.5),
    BLX-0.5 blend crossover, per-coordinate Gaussian mutation (rate 1/d,
    std 0.1 * range), child replaces the current worst if better."""

    variant_id = "GENITOR"
    default_population = 100
    selection_bias = 1.5
    blend_alpha = 0.5

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_individuals = self.options.population_size or self.default_population
        self.population = None
        self.fitness = None
        self.mutation_std = 0.1 * problem.boundary_range

    @property
    def step_size_like(self):
        return float("nan")

    def _rank_index(self) -> int:
        """Whitley's closed-form linear-bias rank sampling (0 = best)."""
        b = self.selection_bias
        u = self.rng_shuffle.random()
        frac = (b - math.sqrt(b * b - 4.0 * (b - 1.0) * u)) / (2.0 * (b - 1.0))
        return min(int(self.n_individuals * frac), self.n_individuals - 1)

    def _propose(self):
        if self.population is None:
            pop = self.rng_init.uniform(
                self.problem.lower_boundary,
                self.problem.upper_boundary,
                (self.n_individuals, self.ndim),
            )
            if self.options.x is not None:
                pop[0] = self.x0
            return pop
        order = np.argsort(self.fitness, kind="stable")
        i = self._rank_index()
        j = self._rank_index()
        while j == i:
            j = self._rank_index()
        p1, p2 = self.population[order[i]], self.population[order[j]]
        low = np.minimum(p1, p2)
        high = np.maximum(p1, p2)
        spread = self.blend_alpha * (high - low)
        child = self.rng_sample.uniform(low - spread, high + spread)
        mask = self.rng_sample.random(self.ndim) < 1.0 / self.ndim
        noise = self.rng_sample.normal(0.0, self.mutation_std)
        child = np.where(mask, child + noise, child)
        return child[None, :]

    def _update(self, candidates, values):
        if self.population is None:
            self.population = candidates.copy()
            self.fitness = np.full(self.n_individuals, np.inf)
            self.fitness[: len(values)] = values
            if len(candidates) < self.n_individuals:
                filler = np.tile(self.x0, (self.n_individuals - len(candidates), 1))
                self.population = np.vstack([candidates, filler])
            return
        worst = int(np.argmax(self.fitness))
        if values[0] < self.fitness[worst]:
            self.population[worst] = candidates[0]
            self.fitness[worst] = values[0]


class CEP(Optimizer):
    """Classical evolutionary programming with self-adaptive mutation scales.

    Each parent produces one child, x' = x + eta * N(0,1) per coordinate,
    and the scales mutate log-normally with tau = 1/sqrt(2*sqrt(d)) and
    tau' = 1/sqrt(2*d).  Survivors are the top half of parents + children by
    wins in pairwise tournaments against q = 10 random opponents.
    """

    variant_id = "CEP"
    default_population = 100
    n_opponents = 10
    eta_floor = 1e-12

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_individuals = self.options.population_size or self.default_population
        d = self.ndim
        self.tau = 1.0 / math.sqrt(2.0 * math.sqrt(d))
        self.tau_prime = 1.0 / math.sqrt(2.0 * d)
        self.population = None
        self.fitness = None
        self.etas = np.full((self.n_individuals, d), self.sigma0)
        self._child_etas = None

    @property
    def step_size_like(self):
        return float(np.mean(self.etas))

    def _propose(self):
        if self.population is None:
            pop = self.rng_init.uniform(
                self.problem.lower_boundary,
                self.problem.upper_boundary,
                (self.n_individuals, self.ndim),
            )
            if self.options.x is not None:
                pop[0] = self.x0
            return pop
        n, d = self.n_individuals, self.ndim
        shared = self.rng_sample.standard_normal((n, 1))
        per_coord = self.rng_sample.standard_normal((n, d))
        self._child_etas = np.maximum(
            self.etas * np.exp(self.tau_prime * shared + self.tau * per_coord),
            self.eta_floor,
        )
        children = self.population + self.etas * self.rng_sample.standard_normal((n, d))
        return children

    def _update(self, candidates, values):
        if self.population is None:
            self.population = candidates.copy()
            self.fitness = np.full(self.n_individuals, np.inf)
            self.fitness[: len(values)] = values
            if len(candidates) < self.n_individuals:
                filler = np.tile(self.x0, (self.n_individuals - len(candidates), 1))
                self.population = np.vstack([candidates, filler])
            return
        n = self.n_individuals
        child_fitness = np.full(n, np.inf)
        child_fitness[: len(values)] = values
        child_pop = self.population.copy()
        child_pop[: len(candidates)] = candidates
        pool_x = np.vstack([self.population, child_pop])
        pool_eta = np.vstack([self.etas, self._child_etas])
        pool_y = np.concatenate([self.fitness, child_fitness])
        wins = np.zeros(2 * n, dtype=int)
        for k in range(2 * n):
            opponents = self.rng_shuffle.integers(2 * n, size=self.n_opponents)
            wins[k] = int(np.sum(pool_y[k] <= pool_y[opponents]))
        order = np.lexsort((np.arange(2 * n), pool_y, -wins))
        survivors = order[:n]
        self.population = pool_x[survivors]
        self.etas = np.maximum(pool_eta[survivors], self.eta_floor)
        self.fitness = pool_y[survivors]


class NM(Optimizer):
    """Nelder-Mead simplex search behind the ask/tell contract.

    Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    The initial simplex is the start point plus d axis steps of
    0.05 * range.  One point is asked per step (the shrink batch asks d).
    """

    variant_id = "NM"
    reflection = 1.0
    expansion = 2.0
    contraction = 0.5
    shrinkage = 0.5

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.simplex = None
        self.simplex_values = None
        self.phase = "init"
        self._centroid = None
        self._xr = None
        self._fr = None
        self._xc = None

    @property
    def step_size_like(self):
        if self.simplex is None:
            return float("nan")
        return float(np.max(np.abs(self.simplex - self.simplex[0])))

    def _sorted(self):
        order = np.argsort(self.simplex_values, kind="stable")
        self.simplex = self.simplex[order]
        self.simplex_values = self.simplex_values[order]

    def _propose(self):
        if self.phase == "init":
            steps = 0.05 * self.problem.boundary_range
            simplex = np.tile(self.x0, (self.ndim + 1, 1))
            for i in range(self.ndim):
                simplex[i + 1, i] += steps[i]
            return simplex
        if self.phase == "reflect":
            self._centroid = self.simplex[:-1].mean(axis=0)
            self._xr = self._centroid + self.reflection * (
                self._centroid - self.simplex[-1]
            )
            return self._xr[None, :]
        if self.phase == "expand":
            xe = self._centroid + self.expansion * (self._xr - self._centroid)
            self._xc = xe
            return xe[None, :]
        if self.phase == "contract_out":
            self._xc = self._centroid + self.contraction * (self._xr - self._centroid)
            return self._xc[None, :]
        if self.phase == "contract_in":
            self._xc = self._centroid - self.contraction * (self._xr - self._centroid)
            return self._xc[None, :]
        # shrink: move everything toward the best vertex
        best = self.simplex[0]
        shrunk = best + self.shrinkage * (self.simplex[1:] - best)
        return shrunk

    def _replace_worst(self, x, y):
        self.simplex[-1] = x
        self.simplex_values[-1] = y
        self._sorted()

    def _update(self, candidates, values):
        if self.phase == "init":
            self.simplex = candidates.copy()
            self.simplex_values = np.asarray(values, dtype=float).copy()
            if len(values) < len(self.simplex):
                self.simplex_values = np.full(len(self.simplex), np.inf)
                self.simplex_values[: len(values)] = values
            self._sorted()
            self.phase = "reflect"
            return
        if self.phase == "reflect":
            fr = float(values[0])
            if fr < self.simplex_values[0]:
                self._fr = fr
                self.phase = "expand"
            elif fr < self.simplex_values[-2]:
                self._replace_worst(self._xr, fr)
                self.phase = "reflect"
            elif fr < self.simplex_values[-1]:
                self._fr = fr
                self.phase = "contract_out"
            else:
                self._fr = fr
                self.phase = "contract_in"
            return
        if self.phase == "expand":
            fe = float(values[0])
            if fe < self._fr:
                self._replace_worst(self._xc, fe)
            else:
                self._replace_worst(self._xr, self._fr)
            self.phase = "reflect"
            return
        if self.phase == "contract_out":
            fc = float(values[0])
            if fc <= self._fr:
                self._replace_worst(self._xc, fc)
                self.phase = "reflect"
            else:
                self.phase = "shrink"
            return
        if self.phase == "contract_in":
            fc = float(values[0])
            if fc < self.simplex_values[-1]:
                self._replace_worst(self._xc, fc)
                self.phase = "reflect"
            else:
                self.phase = "shrink"
            return
        # shrink
        n = len(values)
        self.simplex[1 : n + 1] = candidates[:n]
        self.simplex_values[1 : n + 1] = values
        self._sorted()
        self.phase = "reflect"


class HJ(Optimizer):
    """Hooke-Jeeves pattern search: exploratory coordinate probes around a
    base point, pattern moves of 2*new - old on success, mesh halving on
    failure.  Contribution stops (EarlyStop) once the relative mesh falls
    below 1e-12."""

    variant_id = "HJ"
    initial_mesh = 0.1
    mesh_floor = 1e-12

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.mesh = self.initial_mesh
        self.base = None
        self.base_y = None
        self.work = None
        self.work_y = None
        self.coord = 0
        self.direction = 1
        self.context = "base"
        self.prev_base = None
        self.phase = "init"

    @property
    def step_size_like(self):
        return float(self.mesh * np.min(self.problem.boundary_range))

    def _probe_point(self):
        probe = self.work.copy()
        probe[self.coord] += (
            self.direction * self.mesh * self.problem.boundary_range[self.coord]
        )
        return probe

    def _propose(self):
        if self.phase == "init":
            return self.x0[None, :].copy()
        if self.phase == "pattern_eval":
            return self._pattern_point[None, :].copy()
        return self._probe_point()[None, :]

    def _start_sweep(self, center, center_y, context):
        self.work = center.copy()
        self.work_y = center_y
        self.coord = 0
        self.direction = 1
        self.context = context
        self.phase = "explore"

    def _finish_sweep(self):
        if self.context == "base":
            if self.work_y < self.base_y:
                self.prev_base = self.base.copy()
                self.base = self.work.copy()
                self.base_y = self.work_y
                self._pattern_point = 2.0 * self.base - self.prev_base
                self.phase = "pattern_eval"
            else:
                self.mesh *= 0.5
                if self.mesh < self.mesh_floor:
                    self._early_stop = True
                self._start_sweep(self.base, self.base_y, "base")
        else:  # sweep around a pattern point
            if self.work_y < self.base_y:
                self.prev_base = self.base.copy()
                self.base = self.work.copy()
                self.base_y = self.work_y
                self._pattern_point = 2.0 * self.base - self.prev_base
                self.phase = "pattern_eval"
            else:
                self._start_sweep(self.base, self.base_y, "base")

    def _update(self, candidates, values):
        y = float(values[0])
        if self.phase == "init":
            self.base = candidates[0].copy()
            self.base_y = y
            self._start_sweep(self.base, self.base_y, "base")
            return
        if self.phase == "pattern_eval":
            self._start_sweep(candidates[0], y, "pattern")
            return
        # exploratory probe
        if y < self.work_y:
            self.work = candidates[0].copy()
            self.work_y = y
            self.coord += 1
            self.direction = 1
        elif self.direction == 1:
            self.direction = -1
        else:
            self.coord += 1
            self.direction = 1
        if self.coord == self.ndim:
            self._finish_sweep()


class PRS(Optimizer):
    """Pure random search: uniform box sampling, keep the best."""

    variant_id = "PRS"

    def _propose(self):
        x = self.rng_sample.uniform(
            self.problem.lower_boundary, self.problem.upper_boundary
        )
        return x[None, :]

    def _update(self, candidates, values):
        pass


class GS(Optimizer):
    """Gaussian-smoothing random gradient search with antithetic pairs.

    Each generation evaluates n_pairs antithetic pairs x +/- r*u around the
    center, forms the smoothed gradient estimate
    sum((f+ - f-) * u) / (2 * r * n_pairs), and takes a fixed-rate descent
    step.  Pairs are interleaved: candidates 2j and 2j+1 are x + r*u_j and
    x - r*u_j.
    """

    variant_id = "GS"
    default_pairs = 8

    def __init__(self, problem, options):
        super().__init__(problem, options)
        if self.options.population_size:
            self.n_pairs = max(1, self.options.population_size // 2)
        else:
            self.n_pairs = self.default_pairs
        scale = float(np.min(problem.boundary_range))
        self.smoothing_radius = 1e-3 * scale
        self.learning_rate = 1e-3 * scale
        self.center = self.x0.copy()
        self.last_gradient = np.zeros(self.ndim)
        self._u = None

    @property
    def step_size_like(self):
        return float(self.smoothing_radius)

    def _propose(self):
        self._u = self.rng_sample.standard_normal((self.n_pairs, self.ndim))
        candidates = np.empty((2 * self.n_pairs, self.ndim))
        candidates[0::2] = self.center + self.smoothing_radius * self._u
        candidates[1::2] = self.center - self.smoothing_radius * self._u
        return candidates

    def _update(self, candidates, values):
        n_pairs = len(values) // 2
        if n_pairs == 0:
            return
        diffs = values[0 : 2 * n_pairs : 2] - values[1 : 2 * n_pairs : 2]
        finite = np.isfinite(diffs)
        if not np.any(finite):
            return
        grad = (diffs[finite] @ self._u[:n_pairs][finite]) / (
            2.0 * self.smoothing_radius * n_pairs
        )
        self.last_gradient = grad
        self.center = self.center - self.learning_rate * grad
