"""Estimation-of-distribution algorithms and the cross-entropy method.

Shared conventions: population of lambda = 200 samples, elite fraction
rho = 0.2 (the ceil(rho*lambda) best by fitness, index-stable ties), and a
standard-deviation floor of 1e-12.  EMNA is the full-covariance baseline and
is guarded above d = 512; RPEDA is the large-scale ensemble-of-random-
subspaces variant with O(K*k*d) model memory.
"""

import math

import numpy as np

from .core.errors import CapabilityError
from .core.optimizer import Optimizer

SIGMA_FLOOR = 1e-12
COVARIANCE_JITTER = 1e-12


def select_elites(values: np.ndarray, elite_fraction: float):
    """Indices of the ceil(rho * n) best values, ties index-stable."""
    n_elite = int(math.ceil(elite_fraction * len(values)))
    order = np.argsort(values, kind="stable")
    return order[:n_elite]


class _EdaBase(Optimizer):
    default_population = 200

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_individuals = self.options.population_size or self.default_population
        self.elite_fraction = 0.2


class UMDA(_EdaBase):
    """Univariate marginal EDA: per-coordinate Gaussian refit from elites."""

    variant_id = "UMDA"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.model_mean = self.x0.copy()
        self.model_std = np.full(self.ndim, self.sigma0)

    @property
    def step_size_like(self):
        return float(np.exp(np.mean(np.log(self.model_std))))

    def _propose(self):
        z = self.rng_sample.standard_normal((self.n_individuals, self.ndim))
        return self.model_mean + self.model_std * z

    def _refit(self, elites: np.ndarray):
        mean = elites.mean(axis=0)
        std = np.maximum(elites.std(axis=0), SIGMA_FLOOR)
        return mean, std

    def _update(self, candidates, values):
        elites = candidates[select_elites(values, self.elite_fraction)]
        self.model_mean, self.model_std = self._refit(elites)


class EMNA(_EdaBase):
    """Estimation of multivariate normal: full-covariance refit from elites.

    Kept as the non-large-scale baseline; creation is refused above d = 512
    (use RPEDA there).
    """

    variant_id = "EMNA"
    max_dimension = 512

    def __init__(self, problem, options):
        if problem.ndim_problem > self.max_dimension:
            raise CapabilityError(
                f"EMNA refits a full {problem.ndim_problem}x{problem.ndim_problem} "
                f"covariance and is limited to d <= {self.max_dimension}; "
                "use RPEDA for high dimensions"
            )
        super().__init__(problem, options)
        self.model_mean = self.x0.copy()
        self.model_cov = self.sigma0**2 * np.eye(self.ndim)
        self._chol = self.sigma0 * np.eye(self.ndim)

    @property
    def step_size_like(self):
        return float(np.sqrt(np.trace(self.model_cov) / self.ndim))

    def _propose(self):
        z = self.rng_sample.standard_normal((self.n_individuals, self.ndim))
        return self.model_mean + z @ self._chol.T

    def _update(self, candidates, values):
        elites = candidates[select_elites(values, self.elite_fraction)]
        self.model_mean = elites.mean(axis=0)
        centered = elites - self.model_mean
        cov = (centered.T @ centered) / len(elites)
        self.model_cov = cov + COVARIANCE_JITTER * np.eye(self.ndim)
        self._chol = np.linalg.cholesky(self.model_cov)


class SCEM(_EdaBase):
    """Smoothed cross-entropy method: elite refit blended into the old model
    with smoothing factor alpha = 0.8 for both mean and std."""

    variant_id = "SCEM"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.alpha = 0.8
        self.model_mean = self.x0.copy()
        self.model_std = np.full(self.ndim, self.sigma0)

    @property
    def step_size_like(self):
        return float(np.exp(np.mean(np.log(self.model_std))))

    def _propose(self):
        z = self.rng_sample.standard_normal((self.n_individuals, self.ndim))
        return self.model_mean + self.model_std * z

    def _update(self, candidates, values):
        elites = candidates[select_elites(values, self.elite_fraction)]
        new_mean = elites.mean(axis=0)
        new_std = elites.std(axis=0)
        a = self.alpha
        self.model_mean = a * new_mean + (1 - a) * self.model_mean
        self.model_std = np.maximum(
            a * new_std + (1 - a) * self.model_std, SIGMA_FLOOR
        )


class RPEDA(_EdaBase):
    """Random-projection ensemble EDA for high dimensions.

    Each generation draws K fresh k x d projections (entries N(0,1)/sqrt(k),
    rows orthonormalized), fits a Gaussian to the projected elites in every
    subspace, and lifts samples back through the transpose map around the
    elite mean.  Model memory is O(K*k*d); no d x d matrix is built.
    """

    variant_id = "RPEDA"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.n_subspaces = 5
        self.subspace_dim = min(self.ndim, 3 * int(math.ceil(math.log(max(self.ndim, 2)))))
        self.rng_projection = self.stream("projection")
        self.elite_mean = self.x0.copy()
        self.elites = None
        self.projections = None

    @property
    def step_size_like(self):
        return float("nan")

    def _draw_projections(self):
        k, d = self.subspace_dim, self.ndim
        mats = []
        for _ in range(self.n_subspaces):
            raw = self.rng_projection.standard_normal((k, d)) / math.sqrt(k)
            q, r = np.linalg.qr(raw.T)
            signs = np.sign(np.diag(r))
            signs[signs == 0] = 1.0
            mats.append((q * signs).T)
        return mats

    def _propose(self):
        if self.elites is None:
            z = self.rng_sample.standard_normal((self.n_individuals, self.ndim))
            return self.elite_mean + self.sigma0 * z
        self.projections = self._draw_projections()
        counts = np.full(self.n_subspaces, self.n_individuals // self.n_subspaces)
        counts[: self.n_individuals % self.n_subspaces] += 1
        blocks = []
        centered = self.elites - self.elite_mean
        for proj, count in zip(self.projections, counts):
            projected = centered @ proj.T
            cov = (projected.T @ projected) / len(projected)
            cov += COVARIANCE_JITTER * np.eye(self.subspace_dim)
            chol = np.linalg.cholesky(cov)
            s = self.rng_sample.standard_normal((count, self.subspace_dim)) @ chol.T
            blocks.append(self.elite_mean + s @ proj)
        return np.vstack(blocks)

    def _update(self, candidates, values):
        elites = candidates[select_elites(values, self.elite_fraction)]
        self.elites = elites.copy()
        self.elite_mean = elites.mean(axis=0)
