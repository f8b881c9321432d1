"""Deterministic rotated-and-shifted benchmark instances.

An instance is fully reconstructible from (function_id, ndim, instance_seed):
the rotation is the sign-fixed QR orthogonalization of a standard-normal
matrix drawn from the (instance_seed, "rotation") stream, and the shift is
drawn uniformly from the middle 70% of the default [-5, 5] box from the
(instance_seed, "shift") stream.  The instance evaluates
base(rotation @ (x - shift)), which is quadratic-cost by design.
"""

from dataclasses import dataclass

import numpy as np

from ..core.errors import InvalidOption
from ..core.rng import derive_stream
from .base_functions import BaseFunction, get_base_function

DEFAULT_LOWER = -5.0
DEFAULT_UPPER = 5.0
SHIFT_FRACTION = 0.7


def random_rotation(ndim: int, rng) -> np.ndarray:
    """Orthogonalize a standard-normal matrix; R's diagonal signs are fixed
    so the factorization (and hence the rotation) is unique."""
    gauss = rng.standard_normal((ndim, ndim))
    q, r = np.linalg.qr(gauss)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@dataclass(frozen=True)
class BenchmarkInstance:
    """A base function composed with a deterministic rotation and shift."""

    base: BaseFunction
    rotation: np.ndarray
    shift: np.ndarray
    instance_seed: int

    @property
    def ndim(self) -> int:
        return len(self.shift)

    @property
    def lower_boundary(self) -> np.ndarray:
        return np.full(self.ndim, DEFAULT_LOWER)

    @property
    def upper_boundary(self) -> np.ndarray:
        return np.full(self.ndim, DEFAULT_UPPER)

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return self.base.evaluator(self.rotation @ (x - self.shift))

    def __call__(self, x) -> float:
        return self.evaluate(x)

    def known_minimizer(self):
        """shift + rotation^T @ (base minimizer), when the base has one."""
        base_min = self.base.known_minimizer(self.ndim)
        if base_min is None:
            return None
        return self.shift + self.rotation.T @ base_min


def make_instance(function_id: str, ndim: int, instance_seed: int) -> BenchmarkInstance:
    """Build the deterministic instance for (function_id, ndim, instance_seed)."""
    if ndim < 1:
        raise InvalidOption(f"ndim must be >= 1, got {ndim}")
    base = get_base_function(function_id)
    rotation = random_rotation(ndim, derive_stream(instance_seed, "rotation"))
    half_width = SHIFT_FRACTION * (DEFAULT_UPPER - DEFAULT_LOWER) / 2.0
    shift = derive_stream(instance_seed, "shift").uniform(-half_width, half_width, ndim)
    return BenchmarkInstance(base, rotation, shift, int(instance_seed))
