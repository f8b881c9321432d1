"""Particle swarms and cooperative coevolution.

Swarm constants are the constriction-style w = 0.729, c1 = c2 = 1.49445;
velocities are clamped to +/- 0.2 * (upper - lower) component-wise.  Swarm
size defaults to 30 for d <= 100 and 100 above.  The cooperative variants
(CPSO, COCMA) partition the coordinates into blocks of 25 and optimize one
block per ask against a context vector; the pseudo-fitness of a partial
solution is one full evaluation of the context with the block substituted.
"""

import numpy as np

from .core.errors import InvalidOption
from .core.optimizer import Optimizer
from .core.problem import Problem, RunOptions
from .es import SEPCMAES

INERTIA = 0.729
COGNITION = 1.49445
SOCIETY = 1.49445
VELOCITY_CLAMP_FRACTION = 0.2
DEFAULT_BLOCK_SIZE = 25


def default_swarm_size(ndim: int) -> int:
    return 30 if ndim <= 100 else 100


def coordinate_blocks(ndim: int, block_size: int = DEFAULT_BLOCK_SIZE):
    """Partition {0..d-1} into consecutive blocks (last one ragged)."""
    return [np.arange(i, min(i + block_size, ndim)) for i in range(0, ndim, block_size)]


class _SwarmBase(Optimizer):
    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_particles = self.options.population_size or default_swarm_size(self.ndim)
        rng = self.rng_init
        self.positions = rng.uniform(
            problem.lower_boundary, problem.upper_boundary, (self.n_particles, self.ndim)
        )
        if self.options.x is not None:
            self.positions[0] = self.x0
        self.velocities = np.zeros((self.n_particles, self.ndim))
        self.v_max = VELOCITY_CLAMP_FRACTION * problem.boundary_range
        self.pbest_x = self.positions.copy()
        self.pbest_y = np.full(self.n_particles, np.inf)
        self._initialized = False

    @property
    def step_size_like(self):
        return float("nan")

    def _clamp_velocity(self):
        np.clip(self.velocities, -self.v_max, self.v_max, out=self.velocities)

    def _record_pbest(self, values):
        improved = values < self.pbest_y[: len(values)]
        idx = np.where(improved)[0]
        self.pbest_x[idx] = self.positions[idx]
        self.pbest_y[idx] = values[idx]
        return improved


class SPSO(_SwarmBase):
    """Standard PSO with the global-best topology."""

    variant_id = "SPSO"

    def _neighborhood_best(self) -> np.ndarray:
        best = int(np.argmin(self.pbest_y))
        return np.tile(self.pbest_x[best], (self.n_particles, 1))

    def _propose(self):
        if not self._initialized:
            return self.positions.copy()
        r1 = self.rng_sample.random((self.n_particles, self.ndim))
        r2 = self.rng_sample.random((self.n_particles, self.ndim))
        nbest = self._neighborhood_best()
        self.velocities = (
            INERTIA * self.velocities
            + COGNITION * r1 * (self.pbest_x - self.positions)
            + SOCIETY * r2 * (nbest - self.positions)
        )
        self._clamp_velocity()
        self.positions = self.positions + self.velocities
        return self.positions.copy()

    def _update(self, candidates, values):
        self._record_pbest(values)
        self._initialized = True


class SPSOL(SPSO):
    """Standard PSO with a ring topology (left and right neighbors)."""

    variant_id = "SPSOL"

    def _neighborhood_best(self) -> np.ndarray:
        n = self.n_particles
        nbest = np.empty_like(self.positions)
        for i in range(n):
            ring = [(i - 1) % n, i, (i + 1) % n]
            nbest[i] = self.pbest_x[ring[int(np.argmin(self.pbest_y[ring]))]]
        return nbest


class CLPSO(_SwarmBase):
    """Comprehensive-learning PSO.

    Each dimension of each particle learns from an exemplar: its own
    personal best, or (with probability Pc ramped across particles) the
    personal best of the winner of a two-particle tournament.  A particle's
    exemplar row is rebuilt after 7 consecutive non-improving generations.
    """

    variant_id = "CLPSO"
    refresh_gap = 7

    def __init__(self, problem, options):
        super().__init__(problem, options)
        n = self.n_particles
        if n > 1:
            ramp = (np.exp(10.0 * np.arange(n) / (n - 1)) - 1.0) / (np.e**10 - 1.0)
        else:
            ramp = np.zeros(1)
        self.pc = 0.05 + 0.45 * ramp
        self.exemplar = np.tile(np.arange(n)[:, None], (1, self.ndim))
        self.stagnation = np.zeros(n, dtype=int)

    def _rebuild_exemplar(self, i: int):
        n = self.n_particles
        row = np.full(self.ndim, i)
        used_other = False
        if self.pc[i] > 0 and n > 1:
            for dim in range(self.ndim):
                if self.rng_shuffle.random() < self.pc[i]:
                    a = int(self.rng_shuffle.integers(n - 1))
                    b = int(self.rng_shuffle.integers(n - 1))
                    a = a + 1 if a >= i else a
                    b = b + 1 if b >= i else b
                    row[dim] = a if self.pbest_y[a] <= self.pbest_y[b] else b
                    used_other = True
            if not used_other:
                dim = int(self.rng_shuffle.integers(self.ndim))
                a = int(self.rng_shuffle.integers(n - 1))
                row[dim] = a + 1 if a >= i else a
        self.exemplar[i] = row

    def _propose(self):
        if not self._initialized:
            return self.positions.copy()
        dims = np.arange(self.ndim)
        r = self.rng_sample.random((self.n_particles, self.ndim))
        exemplar_x = self.pbest_x[self.exemplar, dims]
        self.velocities = INERTIA * self.velocities + COGNITION * r * (
            exemplar_x - self.positions
        )
        self._clamp_velocity()
        self.positions = self.positions + self.velocities
        return self.positions.copy()

    def _update(self, candidates, values):
        improved = self._record_pbest(values)
        if not self._initialized:
            self._initialized = True
            return
        for i in range(self.n_particles):
            if i < len(improved) and improved[i]:
                self.stagnation[i] = 0
            else:
                self.stagnation[i] += 1
            if self.stagnation[i] >= self.refresh_gap:
                self._rebuild_exemplar(i)
                self.stagnation[i] = 0


class CPSO(Optimizer):
    """Cooperative PSO: one sub-swarm per coordinate block, round-robin.

    Each ask advances the current block's swarm one generation; candidates
    are the context vector with the block coordinates substituted, so every
    candidate costs one full evaluation.  The context is replaced whenever a
    completed solution improves on it.
    """

    variant_id = "CPSO"
    block_swarm_size = 30

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.blocks = coordinate_blocks(self.ndim)
        self.context = self.x0.copy()
        self.context_y = np.inf
        self.current_block = 0
        lower, upper = problem.lower_boundary, problem.upper_boundary
        n = self.block_swarm_size
        self.block_positions = []
        self.block_velocities = []
        self.block_pbest_x = []
        self.block_pbest_y = []
        self.block_initialized = []
        for block in self.blocks:
            pos = self.rng_init.uniform(lower[block], upper[block], (n, len(block)))
            self.block_positions.append(pos)
            self.block_velocities.append(np.zeros_like(pos))
            self.block_pbest_x.append(pos.copy())
            self.block_pbest_y.append(np.full(n, np.inf))
            self.block_initialized.append(False)
        self.v_max = VELOCITY_CLAMP_FRACTION * problem.boundary_range
        self._phase_context = True

    @property
    def step_size_like(self):
        return float("nan")

    def _propose(self):
        if self._phase_context:
            return self.context[None, :].copy()
        j = self.current_block
        block = self.blocks[j]
        if self.block_initialized[j]:
            n = self.block_swarm_size
            r1 = self.rng_sample.random((n, len(block)))
            r2 = self.rng_sample.random((n, len(block)))
            gbest = self.block_pbest_x[j][int(np.argmin(self.block_pbest_y[j]))]
            vel = (
                INERTIA * self.block_velocities[j]
                + COGNITION * r1 * (self.block_pbest_x[j] - self.block_positions[j])
                + SOCIETY * r2 * (gbest - self.block_positions[j])
            )
            np.clip(vel, -self.v_max[block], self.v_max[block], out=vel)
            self.block_velocities[j] = vel
            self.block_positions[j] = self.block_positions[j] + vel
        candidates = np.tile(self.context, (self.block_swarm_size, 1))
        candidates[:, block] = self.block_positions[j]
        return candidates

    def _update(self, candidates, values):
        if self._phase_context:
            self.context_y = float(values[0])
            self._phase_context = False
            return
        j = self.current_block
        n = len(values)
        pbest_y = self.block_pbest_y[j]
        improved = values < pbest_y[:n]
        idx = np.where(improved)[0]
        self.block_pbest_x[j][idx] = self.block_positions[j][idx]
        pbest_y[idx] = values[idx]
        self.block_initialized[j] = True
        best = int(np.argmin(values))
        if values[best] < self.context_y:
            self.context = candidates[best].copy()
            self.context_y = float(values[best])
        self.current_block = (j + 1) % len(self.blocks)


def _cooperative_block_stub(_x):
    raise RuntimeError("block sub-problems are evaluated through the context vector")


class COCMA(Optimizer):
    """Cooperative coevolution with a separable CMA-ES per coordinate block.

    Same decomposition loop as CPSO; each round gives the current block's
    sub-solver exactly one generation.
    """

    variant_id = "COCMA"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.blocks = coordinate_blocks(self.ndim)
        self.context = self.x0.copy()
        self.context_y = np.inf
        self.current_block = 0
        seed_stream = self.stream("block-seeds")
        self.sub_states = []
        for block in self.blocks:
            sub_problem = Problem(
                fitness_function=_cooperative_block_stub,
                ndim_problem=len(block),
                lower_boundary=problem.lower_boundary[block],
                upper_boundary=problem.upper_boundary[block],
            )
            sub_options = RunOptions(
                seed_rng=int(seed_stream.integers(2**63)),
                fitness_threshold=None,
                max_function_evaluations=1,
                x=self.context[block],
                sigma=self.options.sigma,
            )
            self.sub_states.append(SEPCMAES(sub_problem, sub_options))
        self._phase_context = True

    @property
    def step_size_like(self):
        return float(self.sub_states[self.current_block].sigma)

    def _propose(self):
        if self._phase_context:
            return self.context[None, :].copy()
        j = self.current_block
        block_candidates = self.sub_states[j].ask()
        candidates = np.tile(self.context, (len(block_candidates), 1))
        candidates[:, self.blocks[j]] = block_candidates
        return candidates

    def _update(self, candidates, values):
        if self._phase_context:
            self.context_y = float(values[0])
            self._phase_context = False
            return
        j = self.current_block
        self.sub_states[j].tell(candidates[:, self.blocks[j]], values)
        best = int(np.argmin(values))
        if values[best] < self.context_y:
            self.context = candidates[best].copy()
            self.context_y = float(values[best])
        self.current_block = (j + 1) % len(self.blocks)
