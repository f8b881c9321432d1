"""Evolution strategies: baseline and large-scale covariance-adaptation variants.

All variants share the same conventions: offspring count defaults to
``4 + floor(3*ln(d))``, the top ``mu = floor(lambda/2)`` offspring recombine
with log-rank weights, fitness ties break by candidate index (stable sort),
and every stochastic draw comes from the state's labeled streams.  The
low-memory variants (LMMAES, LMCMA, R1ES, RMES, SEPCMAES) never materialize
a d x d matrix.
"""

import math

import numpy as np

from .core.optimizer import Optimizer


SIGMA_FLOOR = 1e-250  # keeps step sizes positive and finite under
# adversarial (constant) fitness without over- or underflow


def default_offspring_count(ndim: int) -> int:
    return 4 + int(3 * math.log(ndim))


class RecombinationWeights:
    """Log-rank recombination weights: positive, decreasing, summing to 1."""

    def __init__(self, lam: int, mu: int | None = None):
        self.lam = int(lam)
        self.mu = int(mu) if mu is not None else max(1, self.lam // 2)
        raw = np.log((self.lam + 1) / 2.0) - np.log(np.arange(1, self.mu + 1))
        self.weights = raw / raw.sum()
        self.mu_eff = 1.0 / float(np.sum(self.weights**2))

    def select(self, values: np.ndarray):
        """Indices and weights of the recombined parents (index-stable ties).

        Handles truncated generations: with fewer than ``mu`` values the
        weights are renormalized over the available candidates.
        """
        order = np.argsort(values, kind="stable")
        mu = min(self.mu, len(order))
        idx = order[:mu]
        if mu == self.mu:
            return idx, self.weights
        w = self.weights[:mu]
        return idx, w / w.sum()


def expected_normal_norm(ndim: int) -> float:
    """E||N(0, I_d)|| via the standard series approximation."""
    return math.sqrt(ndim) * (1.0 - 1.0 / (4.0 * ndim) + 1.0 / (21.0 * ndim**2))


class _RankSuccessRule:
    """Population-based rank success rule for step-size control.

    Ranks the previous and current offspring fitness jointly; a positive
    rank shift of the current population over the target rate grows sigma.
    Used by LMCMA, R1ES, and RMES.
    """

    def __init__(self, target=0.3, smoothing=0.3, damping=1.0):
        self.target = target
        self.smoothing = smoothing
        self.damping = damping
        self.state = 0.0
        self.prev_values = None

    def factor(self, values: np.ndarray) -> float:
        values = np.asarray(values, dtype=float)
        if self.prev_values is None or len(self.prev_values) != len(values):
            self.prev_values = values.copy()
            return 1.0
        lam = len(values)
        combined = np.concatenate([self.prev_values, values])
        ranks = np.empty(2 * lam)
        ranks[np.argsort(combined, kind="stable")] = np.arange(2 * lam)
        shift = float(np.sum(ranks[:lam]) - np.sum(ranks[lam:])) / lam**2
        self.state = (1 - self.smoothing) * self.state + self.smoothing * (
            shift - self.target
        )
        self.prev_values = values.copy()
        return math.exp(min(max(self.state / self.damping, -1.0), 1.0))


class RES(Optimizer):
    """(1+1) evolution strategy with 1/5th-success-rule step-size control.

    Sigma grows by exp(1/sqrt(d+1)) on success and shrinks by a quarter of
    that exponent on failure, putting the equilibrium success rate at 1/5.
    """

    variant_id = "RES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.parent_y = None
        self.n_success = 0
        self.n_trials = 0
        self._grow = math.exp(1.0 / math.sqrt(self.ndim + 1))
        self._shrink = math.exp(-0.25 / math.sqrt(self.ndim + 1))

    def _propose(self):
        if self.parent_y is None:
            return self.mean[None, :].copy()
        z = self.rng_sample.standard_normal(self.ndim)
        return (self.mean + self.sigma * z)[None, :]

    def _update(self, candidates, values):
        if self.parent_y is None:
            self.parent_y = float(values[0])
            return
        self.n_trials += 1
        if values[0] < self.parent_y:
            self.mean = candidates[0].copy()
            self.parent_y = float(values[0])
            self.sigma *= self._grow
            self.n_success += 1
        else:
            self.sigma *= self._shrink
        self.sigma = max(self.sigma, SIGMA_FLOOR)


class CSAES(Optimizer):
    """(mu/mu_w, lambda)-ES with cumulative step-size adaptation.

    Isotropic covariance only; the step-size path is compared against the
    expected norm of a standard normal vector.
    """

    variant_id = "CSAES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        self.lam = self.options.population_size or default_offspring_count(self.ndim)
        self.w = RecombinationWeights(self.lam)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        d, mu_eff = self.ndim, self.w.mu_eff
        self.c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0)
        self.d_sigma = (
            1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + self.c_sigma
        )
        self.chi_n = expected_normal_norm(d)
        self.p_sigma = np.zeros(d)
        self._z = None

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigma * self._z

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        z_w = w @ self._z[idx]
        self.mean = w @ candidates[idx]
        c, mu_eff = self.c_sigma, 1.0 / float(np.sum(w**2))
        self.p_sigma = (1 - c) * self.p_sigma + math.sqrt(c * (2 - c) * mu_eff) * z_w
        self.sigma = max(
            self.sigma
            * math.exp(
                (c / self.d_sigma) * (np.linalg.norm(self.p_sigma) / self.chi_n - 1.0)
            ),
            SIGMA_FLOOR,
        )


class CMAES(Optimizer):
    """Covariance matrix adaptation ES with rank-one plus rank-mu updates.

    The eigendecomposition used for sampling is refreshed lazily, at most
    every d/10 generations; eigenvalues are floored at 1e-20 * trace(C)/d.
    """

    variant_id = "CMAES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        mu_eff = self.w.mu_eff
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0)
        self.d_sigma = (
            1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + self.c_sigma
        )
        self.c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d)
        self.c_1 = 2.0 / ((d + 1.3) ** 2 + mu_eff)
        self.c_mu = min(
            1.0 - self.c_1,
            2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) ** 2 + mu_eff),
        )
        self.chi_n = expected_normal_norm(d)
        self.p_sigma = np.zeros(d)
        self.p_c = np.zeros(d)
        self.C = np.eye(d)
        self.B = np.eye(d)
        self.D = np.ones(d)
        self._eigen_interval = max(1, d // 10)
        self._gens_since_eigen = 0
        self._z = None

    def _refresh_eigen(self):
        self.C = (self.C + self.C.T) / 2.0
        eigvals, self.B = np.linalg.eigh(self.C)
        floor = 1e-20 * float(np.trace(self.C)) / self.ndim
        self.D = np.sqrt(np.maximum(eigvals, floor))
        self._gens_since_eigen = 0

    def _propose(self):
        if self._gens_since_eigen >= self._eigen_interval:
            self._refresh_eigen()
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        y = (self._z * self.D) @ self.B.T
        return self.mean + self.sigma * y

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        old_mean = self.mean
        self.mean = w @ candidates[idx]
        y_w = (self.mean - old_mean) / self.sigma
        c_inv_sqrt_y = self.B @ ((self.B.T @ y_w) / self.D)
        c, d_sig = self.c_sigma, self.d_sigma
        self.p_sigma = (1 - c) * self.p_sigma + math.sqrt(
            c * (2 - c) * mu_eff
        ) * c_inv_sqrt_y
        norm_p = np.linalg.norm(self.p_sigma)
        h_sigma = float(
            norm_p / math.sqrt(1 - (1 - c) ** (2 * (self.generation + 1)))
            < (1.4 + 2.0 / (self.ndim + 1)) * self.chi_n
        )
        cc = self.c_c
        self.p_c = (1 - cc) * self.p_c + h_sigma * math.sqrt(
            cc * (2 - cc) * mu_eff
        ) * y_w
        y_sel = (candidates[idx] - old_mean) / self.sigma
        rank_mu = (y_sel.T * w) @ y_sel
        self.C = (
            (1 - self.c_1 - self.c_mu) * self.C
            + self.c_1
            * (np.outer(self.p_c, self.p_c) + (1 - h_sigma) * cc * (2 - cc) * self.C)
            + self.c_mu * rank_mu
        )
        self.sigma = max(
            self.sigma * math.exp((c / d_sig) * (norm_p / self.chi_n - 1.0)),
            SIGMA_FLOOR,
        )
        self._gens_since_eigen += 1

    def covariance_min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh((self.C + self.C.T) / 2.0)[0])


class MAES(Optimizer):
    """Matrix adaptation ES: transformation matrix M, no eigendecomposition."""

    variant_id = "MAES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        mu_eff = self.w.mu_eff
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0)
        self.d_sigma = (
            1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + self.c_sigma
        )
        self.c_1 = 2.0 / ((d + 1.3) ** 2 + mu_eff)
        self.c_mu = min(
            1.0 - self.c_1,
            2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) ** 2 + mu_eff),
        )
        self.chi_n = expected_normal_norm(d)
        self.p_sigma = np.zeros(d)
        self.M = np.eye(d)
        self._z = None

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        dirs = self._z @ self.M.T
        return self.mean + self.sigma * dirs

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        z_sel = self._z[idx]
        z_w = w @ z_sel
        self.mean = w @ candidates[idx]
        c = self.c_sigma
        self.p_sigma = (1 - c) * self.p_sigma + math.sqrt(c * (2 - c) * mu_eff) * z_w
        eye = np.eye(self.ndim)
        update = (
            eye
            + (self.c_1 / 2.0) * (np.outer(self.p_sigma, self.p_sigma) - eye)
            + (self.c_mu / 2.0) * ((z_sel.T * w) @ z_sel - eye)
        )
        self.M = self.M @ update
        self.sigma = max(
            self.sigma
            * math.exp(
                (c / self.d_sigma) * (np.linalg.norm(self.p_sigma) / self.chi_n - 1.0)
            ),
            SIGMA_FLOOR,
        )


class LMMAES(Optimizer):
    """Limited-memory matrix adaptation ES, O(m*d) cost per sample.

    Keeps ``m = 4 + floor(3*ln(d))`` direction vectors with staggered
    learning rates; the sampling transform applies them as vector products,
    never building a d x d matrix.
    """

    variant_id = "LMMAES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        mu_eff = self.w.mu_eff
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.n_vectors = default_offspring_count(d)
        self.m_vectors = np.zeros((self.n_vectors, d))
        j = np.arange(self.n_vectors)
        self.c_d = np.minimum(1.0 / (1.5**j * d), 0.5)
        self.c_vec = np.minimum(self.lam / (4.0**j * d), 0.5)
        self.c_sigma = min(2.0 * self.lam / d, 0.5)
        self.d_sigma = 1.0
        self.p_sigma = np.zeros(d)
        self._mu_eff = mu_eff
        self._z = None

    def _transform(self, z: np.ndarray) -> np.ndarray:
        """Apply the low-memory transform to a block of standard normals."""
        out = z.copy()
        active = min(self.generation, self.n_vectors)
        for j in range(active):
            m_j = self.m_vectors[j]
            out = (1 - self.c_d[j]) * out + self.c_d[j] * np.outer(out @ m_j, m_j)
        return out

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigma * self._transform(self._z)

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        z_w = w @ self._z[idx]
        self.mean = w @ candidates[idx]
        c = self.c_sigma
        self.p_sigma = (1 - c) * self.p_sigma + math.sqrt(c * (2 - c) * mu_eff) * z_w
        for j in range(self.n_vectors):
            cj = self.c_vec[j]
            self.m_vectors[j] = (1 - cj) * self.m_vectors[j] + math.sqrt(
                cj * (2 - cj) * mu_eff
            ) * z_w
        self.sigma = max(
            self.sigma
            * math.exp(
                (c / self.d_sigma)
                * (float(self.p_sigma @ self.p_sigma) / self.ndim - 1.0)
                / 2.0
            ),
            SIGMA_FLOOR,
        )


class LMCMA(Optimizer):
    """Limited-memory CMA: implicit Cholesky factor from m stored pairs.

    Stored direction pairs are snapshots of the evolution path taken at a
    fixed generation spacing (FIFO eviction), so consecutive stored
    generations are always at least the declared spacing apart.  Step size
    follows the population rank success rule.
    """

    variant_id = "LMCMA"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.n_vectors = default_offspring_count(d)
        self.c_c = 0.5 / math.sqrt(d)
        self.c_1 = 1.0 / (10.0 * math.log(d + 1.0))
        self.save_interval = max(1, d // self.n_vectors)
        self.p_c = np.zeros(d)
        self.stored_p = np.zeros((0, d))
        self.stored_v = np.zeros((0, d))
        self.stored_b = np.zeros(0)
        self.stored_generations: list[int] = []
        self._a = math.sqrt(1.0 - self.c_1)
        self._rule = _RankSuccessRule(target=0.25, smoothing=0.3, damping=1.0)
        self._z = None

    # -- implicit Cholesky factor -------------------------------------
    def _apply_factor(self, z: np.ndarray) -> np.ndarray:
        """A @ z for a block of vectors z (rows)."""
        out = z.copy()
        for j in range(len(self.stored_b)):
            dots = z @ self.stored_v[j]
            out = self._a * out + self.stored_b[j] * np.outer(dots, self.stored_p[j])
        return out

    def _apply_inverse(self, vec: np.ndarray, upto: int) -> np.ndarray:
        """A^-1 @ vec using the first ``upto`` stored pairs."""
        out = vec.copy()
        for j in range(upto):
            v = self.stored_v[j]
            b = self.stored_b[j]
            gamma = b / (self._a + b * float(v @ v))
            out = (out - gamma * v * float(v @ out)) / self._a
        return out

    def _rebuild_pairs(self):
        """Recompute v and b for every stored p in chronological order."""
        c1, a = self.c_1, self._a
        for j in range(len(self.stored_p)):
            v = self._apply_inverse(self.stored_p[j], j)
            self.stored_v[j] = v
            v_sq = float(v @ v)
            if v_sq < 1e-300:
                self.stored_b[j] = 0.0
            else:
                self.stored_b[j] = (a / v_sq) * (
                    math.sqrt(1.0 + (c1 / (1.0 - c1)) * v_sq) - 1.0
                )

    def _save_path(self):
        if len(self.stored_generations) >= self.n_vectors:
            self.stored_p = self.stored_p[1:]
            self.stored_v = self.stored_v[1:]
            self.stored_b = self.stored_b[1:]
            self.stored_generations.pop(0)
        self.stored_p = np.vstack([self.stored_p, self.p_c])
        self.stored_v = np.vstack([self.stored_v, np.zeros(self.ndim)])
        self.stored_b = np.append(self.stored_b, 0.0)
        self.stored_generations.append(self.generation)
        self._rebuild_pairs()

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigma * self._apply_factor(self._z)

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        old_mean = self.mean
        self.mean = w @ candidates[idx]
        cc = self.c_c
        self.p_c = (1 - cc) * self.p_c + math.sqrt(cc * (2 - cc) * mu_eff) * (
            self.mean - old_mean
        ) / self.sigma
        if self.generation % self.save_interval == 0:
            self._save_path()
        self.sigma = max(self.sigma * self._rule.factor(values), SIGMA_FLOOR)


class R1ES(Optimizer):
    """Rank-one ES: samples N(mean, sigma^2 (I + beta p p^T)) in O(d).

    The principal vector p is the evolution path of the mean shift; step
    size follows the population rank success rule.
    """

    variant_id = "R1ES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.beta = 1.0
        self.c_c = 2.0 / (d + 7.0)
        self.p = np.zeros(d)
        self._rule = _RankSuccessRule(target=0.3, smoothing=0.3, damping=1.0)
        self._z = None
        self._r = None

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        self._r = self.rng_sample.standard_normal(self.lam)
        dirs = self._z + math.sqrt(self.beta) * np.outer(self._r, self.p)
        return self.mean + self.sigma * dirs

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        old_mean = self.mean
        self.mean = w @ candidates[idx]
        cc = self.c_c
        self.p = (1 - cc) * self.p + math.sqrt(cc * (2 - cc) * mu_eff) * (
            self.mean - old_mean
        ) / self.sigma
        self.sigma = max(self.sigma * self._rule.factor(values), SIGMA_FLOOR)


class RMES(Optimizer):
    """Rank-m ES: m stored principal vectors with generation-gap replacement."""

    variant_id = "RMES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.n_vectors = 2
        self.c_cov = 0.4
        self.c_c = 2.0 / (d + 7.0)
        self.gap_threshold = d
        self.p = np.zeros(d)
        self.principal = np.zeros((0, d))
        self.principal_generations: list[int] = []
        self._rule = _RankSuccessRule(target=0.3, smoothing=0.3, damping=1.0)
        self._z = None

    def _propose(self):
        lam, d = self.lam, self.ndim
        self._z = self.rng_sample.standard_normal((lam, d))
        dirs = self._z.copy()
        for j in range(len(self.principal)):
            r = self.rng_sample.standard_normal(lam)
            dirs = math.sqrt(1 - self.c_cov) * dirs + math.sqrt(self.c_cov) * np.outer(
                r, self.principal[j]
            )
        return self.mean + self.sigma * dirs

    def _store_path(self):
        tags = self.principal_generations
        if len(tags) < self.n_vectors:
            self.principal = np.vstack([self.principal, self.p])
            tags.append(self.generation)
            return
        gaps = [tags[j + 1] - tags[j] for j in range(len(tags) - 1)]
        if gaps and min(gaps) < self.gap_threshold:
            evict = int(np.argmin(gaps)) + 1
        else:
            evict = 0
        self.principal = np.delete(self.principal, evict, axis=0)
        tags.pop(evict)
        self.principal = np.vstack([self.principal, self.p])
        tags.append(self.generation)

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        old_mean = self.mean
        self.mean = w @ candidates[idx]
        cc = self.c_c
        self.p = (1 - cc) * self.p + math.sqrt(cc * (2 - cc) * mu_eff) * (
            self.mean - old_mean
        ) / self.sigma
        self._store_path()
        self.sigma = max(self.sigma * self._rule.factor(values), SIGMA_FLOOR)


class SEPCMAES(Optimizer):
    """Separable CMA-ES: diagonal covariance only, O(d) cost per sample.

    Covariance learning rates are scaled up by (d+2)/3 relative to the full
    CMA-ES defaults, exploiting the restriction to the diagonal.
    """

    variant_id = "SEPCMAES"

    def __init__(self, problem, options):
        super().__init__(problem, options)
        d = self.ndim
        self.lam = self.options.population_size or default_offspring_count(d)
        self.w = RecombinationWeights(self.lam)
        mu_eff = self.w.mu_eff
        self.mean = self.x0.copy()
        self.sigma = self.sigma0
        self.c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0)
        self.d_sigma = (
            1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0) + self.c_sigma
        )
        self.c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d)
        scale = (d + 2.0) / 3.0
        c_1 = scale * 2.0 / ((d + 1.3) ** 2 + mu_eff)
        c_mu = scale * 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) ** 2 + mu_eff)
        total = c_1 + c_mu
        if total > 1.0:
            c_1, c_mu = c_1 / total, c_mu / total
        self.c_1, self.c_mu = c_1, c_mu
        self.chi_n = expected_normal_norm(d)
        self.p_sigma = np.zeros(d)
        self.p_c = np.zeros(d)
        self.variances = np.ones(d)
        self._z = None

    def _propose(self):
        self._z = self.rng_sample.standard_normal((self.lam, self.ndim))
        return self.mean + self.sigma * np.sqrt(self.variances) * self._z

    def _update(self, candidates, values):
        idx, w = self.w.select(values)
        mu_eff = 1.0 / float(np.sum(w**2))
        old_mean = self.mean
        self.mean = w @ candidates[idx]
        y_w = (self.mean - old_mean) / self.sigma
        c = self.c_sigma
        self.p_sigma = (1 - c) * self.p_sigma + math.sqrt(c * (2 - c) * mu_eff) * (
            y_w / np.sqrt(self.variances)
        )
        norm_p = np.linalg.norm(self.p_sigma)
        h_sigma = float(
            norm_p / math.sqrt(1 - (1 - c) ** (2 * (self.generation + 1)))
            < (1.4 + 2.0 / (self.ndim + 1)) * self.chi_n
        )
        cc = self.c_c
        self.p_c = (1 - cc) * self.p_c + h_sigma * math.sqrt(
            cc * (2 - cc) * mu_eff
        ) * y_w
        y_sel = (candidates[idx] - old_mean) / self.sigma
        rank_mu_diag = w @ (y_sel**2)
        self.variances = (
            (1 - self.c_1 - self.c_mu) * self.variances
            + self.c_1
            * (self.p_c**2 + (1 - h_sigma) * cc * (2 - cc) * self.variances)
            + self.c_mu * rank_mu_diag
        )
        floor = 1e-20 * float(np.mean(self.variances))
        self.variances = np.maximum(self.variances, max(floor, 1e-300))
        self.sigma = max(
            self.sigma * math.exp((c / self.d_sigma) * (norm_p / self.chi_n - 1.0)),
            SIGMA_FLOOR,
        )
