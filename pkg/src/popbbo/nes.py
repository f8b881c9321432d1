"""Natural evolution strategies: separable, full-exponential, and rank-one.

All variants replace raw fitness by rank-based utilities, which makes every
update invariant under strictly monotone fitness transforms.
"""

import math

import numpy as np

from .core.errors import TooFewSamples
from .core.optimizer import Optimizer
from .es import SIGMA_FLOOR, default_offspring_count


def fitness_shaping(fitness_values) -> np.ndarray:
    """Rank-based utilities: max(0, ln(lam/2+1) - ln(rank)), normalized to
    sum 1, then shifted by -1/lam so the utilities sum to zero.

    Ties share the index-ordered ranks (stable sort).  Returned utilities
    are aligned with the input order, not sorted.
    """
    values = np.asarray(fitness_values, dtype=float).ravel()
    lam = len(values)
    if lam < 2:
        raise TooFewSamples(f"fitness shaping needs >= 2 values, got {lam}")
    order = np.argsort(values, kind="stable")
    ranks = np.empty(lam)
    ranks[order] = np.arange(1, lam + 1)
    raw = np.maximum(0.0, math.log(lam / 2.0 + 1.0) - np.log(ranks))
    utilities = raw / raw.sum() - 1.0 / lam
    return utilities


def _expm_symmetric_eigh(mat: np.ndarray) -> np.ndarray:
    eigvals, vecs = np.linalg.eigh(mat)
    return (vecs * np.exp(eigvals)) @ vecs.T


def _expm_symmetric_series(mat: np.ndarray, terms: int = 12) -> np.ndarray:
    """Scaling-and-squaring with a truncated Taylor series."""
    norm = float(np.linalg.norm(mat, ord=np.inf))
    squarings = max(0, int(math.ceil(math.log2(max(norm, 1e-16)))) + 1)
    scaled = mat / (2.0**squarings)
    result = np.eye(len(mat))
    term = np.eye(len(mat))
    for k in range(1, terms + 1):
        term = term @ scaled / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def expm_symmetric(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential of a symmetric matrix.

    Eigendecomposition route up to d = 512, scaled truncated series above.
    """
    if len(mat) <= 512:
        return _expm_symmetric_eigh(mat)
    return _expm_symmetric_series(mat)


class SNES(Optimizer):
    """Separable NES: per-coordinate standard deviations, O(d) per sample."""

    variant_id = "SNES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.mean = self.x0.copy()
        self.sigmas = np.full(d, self.sigma0)
        self.eta_mean = 1.0
        self.eta_sigma = (3.0 + math.log(d)) / (5.0 * math.sqrt(d))
        self._s = None

    @property
    def step_size_like(self):
        return float(np.exp(np.mean(np.log(self.sigmas))))

    def _propose(self):
        self._s = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigmas * self._s

    def _apply_utilities(self, s: np.ndarray, utilities: np.ndarray):
        self.mean = self.mean + self.eta_mean * self.sigmas * (utilities @ s)
        self.sigmas = np.maximum(
            self.sigmas * np.exp((self.eta_sigma / 2.0) * (utilities @ (s**2 - 1.0))),
            SIGMA_FLOOR,
        )

    def _update(self, candidates, values):
        self._apply_utilities(self._s[: len(values)], fitness_shaping(values))


class XNES(Optimizer):
    """Exponential NES with the scale/shape split.

    The transform is sigma * B with det-normalized shape B; the shape update
    exponentiates the traceless part of the natural gradient, so |det B|
    stays at 1 up to floating-point drift.
    """

    variant_id = "XNES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.B = np.eye(d)
        self.eta_mean = 1.0
        self.eta_sigma = (9.0 + 3.0 * math.log(d)) / (5.0 * d * math.sqrt(d))
        self.eta_shape = self.eta_sigma
        self._z = None

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigma * (self._z @ self.B.T)

    def _update(self, candidates, values):
        z = self._z[: len(values)]
        u = fitness_shaping(values)
        g_delta = u @ z
        g_m = (z.T * u) @ z - np.sum(u) * np.eye(self.ndim)
        g_sigma = float(np.trace(g_m)) / self.ndim
        g_shape = g_m - g_sigma * np.eye(self.ndim)
        self.mean = self.mean + self.eta_mean * self.sigma * (self.B @ g_delta)
        self.sigma = max(
            self.sigma * math.exp((self.eta_sigma / 2.0) * g_sigma), SIGMA_FLOOR
        )
        self.B = self.B @ expm_symmetric((self.eta_shape / 2.0) * g_shape)


class R1NES(Optimizer):
    """Rank-one NES: covariance sigma^2 (I + v v^T), O(d) memory.

    The natural gradient is computed in whitened coordinates and projected
    onto the rank-one manifold: an isotropic log-scale step, a log-length
    step for |v|, and a tangential rotation of the direction of v.
    """

    variant_id = "R1NES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        direction = self.rng_init.standard_normal(d)
        self.v = 1e-6 * direction / np.linalg.norm(direction)
        self.eta_mean = 1.0
        self.eta_sigma = (3.0 + math.log(d)) / (5.0 * math.sqrt(d))
        self.eta_length = min(1.0 / math.sqrt(d), 0.2)
        self.eta_rotate = min(1.0 / math.sqrt(d), 0.2)
        self._w = None
        self._r = None
        self._y = None

    def _propose(self):
        self._w = self.rng_sample.standard_normal((self.lam, self.ndim))
        self._r = self.rng_sample.standard_normal(self.lam)
        self._y = self._w + np.outer(self._r, self.v)
        return self.mean + self.sigma * self._y

    def _whiten(self, y: np.ndarray) -> np.ndarray:
        """(I + v v^T)^(-1/2) applied to rows of y, in O(d) per row."""
        v_sq = float(self.v @ self.v)
        if v_sq < 1e-300:
            return y
        coeff = (1.0 / math.sqrt(1.0 + v_sq) - 1.0) / v_sq
        return y + coeff * np.outer(y @ self.v, self.v)

    def _update(self, candidates, values):
        n = len(values)
        u = fitness_shaping(values)
        y = self._y[:n]
        z = self._whiten(y)
        # mean: natural gradient step in original coordinates
        self.mean = self.mean + self.eta_mean * self.sigma * (u @ y)
        # isotropic scale: trace part of the whitened natural gradient
        g_sigma = float(u @ np.sum(z**2, axis=1)) / self.ndim
        self.sigma = max(
            self.sigma * math.exp((self.eta_sigma / 2.0) * g_sigma), SIGMA_FLOOR
        )
        # rank-one part: length and rotation of v
        v_norm = float(np.linalg.norm(self.v))
        if v_norm < 1e-300:
            return
        v_hat = self.v / v_norm
        proj = z @ v_hat
        g_length = float(u @ (proj**2))
        g_rotate = (u * proj) @ z - g_length * v_hat
        rho = math.log1p(v_norm**2) + self.eta_length * (g_length - g_sigma)
        rho = min(max(rho, 1e-12), 60.0)
        new_norm = math.sqrt(math.expm1(rho))
        new_dir = v_hat + self.eta_rotate * g_rotate
        new_dir /= np.linalg.norm(new_dir)
        self.v = new_norm * new_dir
