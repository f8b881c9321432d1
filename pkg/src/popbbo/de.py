"""Differential evolution: classic DE/rand/1/bin and adaptive JADE.

The population lives in one contiguous NP x d array.  The first ask returns
the initial population; afterwards each ask returns one trial vector per
parent and tell applies greedy one-to-one replacement.  Mutation indices are
drawn from the "shuffle" stream, crossover noise from "sample".
"""

import numpy as np

from .core.errors import PopulationTooSmall
from .core.optimizer import Optimizer


class _DEBase(Optimizer):
    default_population = 100

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_individuals = self.options.population_size or self.default_population
        if self.n_individuals < 4:
            raise PopulationTooSmall(
                f"differential evolution needs NP >= 4, got {self.n_individuals}"
            )
        self.population = None
        self.fitness = None

    def _initial_population(self):
        pop = self.rng_init.uniform(
            self.problem.lower_boundary,
            self.problem.upper_boundary,
            size=(self.n_individuals, self.ndim),
        )
        if self.options.x is not None:
            pop[0] = self.x0
        return pop

    def _ingest_initial(self, candidates, values):
        self.population = candidates.copy()
        self.fitness = np.full(self.n_individuals, np.inf)
        self.fitness[: len(values)] = values
        if len(values) < self.n_individuals:
            # truncated first generation: pad with the proposed rows
            missing = self.n_individuals - len(candidates)
            if missing > 0:
                filler = np.tile(self.x0, (missing, 1))
                self.population = np.vstack([candidates, filler])

    def _distinct_indices(self, exclude, count, high):
        """``count`` distinct indices below ``high``, none in ``exclude``."""
        chosen = []
        taken = set(exclude)
        while len(chosen) < count:
            r = int(self.rng_shuffle.integers(high))
            if r not in taken:
                taken.add(r)
                chosen.append(r)
        return chosen

    def _crossover(self, parent, mutant, cr):
        mask = self.rng_sample.random(self.ndim) < cr
        forced = int(self.rng_shuffle.integers(self.ndim))
        mask[forced] = True
        return np.where(mask, mutant, parent)


class CDE(_DEBase):
    """DE/rand/1/bin with fixed F = 0.5 and CR = 0.9."""

    variant_id = "CDE"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.f_scale = 0.5
        self.crossover_rate = 0.9

    def _propose(self):
        if self.population is None:
            return self._initial_population()
        trials = np.empty((self.n_individuals, self.ndim))
        for i in range(self.n_individuals):
            r1, r2, r3 = self._distinct_indices({i}, 3, self.n_individuals)
            mutant = self.population[r1] + self.f_scale * (
                self.population[r2] - self.population[r3]
            )
            trials[i] = self._crossover(self.population[i], mutant, self.crossover_rate)
        return trials

    def _update(self, candidates, values):
        if self.population is None:
            self._ingest_initial(candidates, values)
            return
        for i in range(len(values)):
            if values[i] <= self.fitness[i]:
                self.population[i] = candidates[i]
                self.fitness[i] = values[i]


class JADE(_DEBase):
    """Adaptive DE: current-to-pbest/1 mutation with an external archive.

    Per-individual F ~ Cauchy(mu_F, 0.1) truncated to (0, 1] and
    CR ~ Normal(mu_CR, 0.1) clipped to [0, 1]; after each generation the
    adaptive means move toward the Lehmer mean of successful F and the
    arithmetic mean of successful CR with rate c = 0.1.
    """

    variant_id = "JADE"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.mu_f = 0.5
        self.mu_cr = 0.5
        self.c_adapt = 0.1
        self.p_best_fraction = 0.05
        self.archive = np.zeros((0, self.ndim))
        self._trial_f = None
        self._trial_cr = None

    def _draw_f(self) -> float:
        while True:
            f = self.mu_f + 0.1 * float(self.rng_sample.standard_cauchy())
            if f > 0.0:
                return min(f, 1.0)

    def _propose(self):
        if self.population is None:
            return self._initial_population()
        np_size = self.n_individuals
        n_best = max(1, int(round(self.p_best_fraction * np_size)))
        best_pool = np.argsort(self.fitness, kind="stable")[:n_best]
        union = (
            np.vstack([self.population, self.archive])
            if len(self.archive)
            else self.population
        )
        trials = np.empty((np_size, self.ndim))
        self._trial_f = np.empty(np_size)
        self._trial_cr = np.empty(np_size)
        for i in range(np_size):
            f_i = self._draw_f()
            cr_i = float(np.clip(self.rng_sample.normal(self.mu_cr, 0.1), 0.0, 1.0))
            self._trial_f[i] = f_i
            self._trial_cr[i] = cr_i
            pbest = best_pool[int(self.rng_shuffle.integers(n_best))]
            (r1,) = self._distinct_indices({i}, 1, np_size)
            (r2,) = self._distinct_indices({i, r1}, 1, len(union))
            mutant = (
                self.population[i]
                + f_i * (self.population[pbest] - self.population[i])
                + f_i * (self.population[r1] - union[r2])
            )
            trials[i] = self._crossover(self.population[i], mutant, cr_i)
        return trials

    def _update(self, candidates, values):
        if self.population is None:
            self._ingest_initial(candidates, values)
            return
        success_f, success_cr = [], []
        for i in range(len(values)):
            if values[i] < self.fitness[i]:
                self.archive = np.vstack([self.archive, self.population[i]])
                self.population[i] = candidates[i]
                self.fitness[i] = values[i]
                success_f.append(self._trial_f[i])
                success_cr.append(self._trial_cr[i])
        while len(self.archive) > self.n_individuals:
            evict = int(self.rng_shuffle.integers(len(self.archive)))
            self.archive = np.delete(self.archive, evict, axis=0)
        if success_f:
            sf = np.asarray(success_f)
            lehmer = float(np.sum(sf**2) / np.sum(sf))
            self.mu_f = (1 - self.c_adapt) * self.mu_f + self.c_adapt * lehmer
            self.mu_cr = (1 - self.c_adapt) * self.mu_cr + self.c_adapt * float(
                np.mean(success_cr)
            )
        self.mu_f = float(min(max(self.mu_f, 1e-8), 1.0))
        self.mu_cr = float(min(max(self.mu_cr, 1e-8), 1.0))
