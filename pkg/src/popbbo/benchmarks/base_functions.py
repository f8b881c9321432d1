"""The 20 base test functions, with their known minima where closed-form.

All evaluators take a 1-d float vector and return a scalar.  Definitions
follow the standard textbook forms; every function with a closed-form
minimizer satisfies evaluator(minimizer) == global_minimum_value to 1e-12.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..core.errors import EmptyVector, UnknownVariant


def _check(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise EmptyVector("benchmark functions need a non-empty vector")
    return x


def sphere(x):
    x = _check(x)
    return float(np.sum(x**2))


def cigar(x):
    x = _check(x)
    return float(x[0] ** 2 + 1e6 * np.sum(x[1:] ** 2))


def discus(x):
    x = _check(x)
    return float(1e6 * x[0] ** 2 + np.sum(x[1:] ** 2))


def cigar_discus(x):
    x = _check(x)
    if len(x) == 1:
        return float(x[0] ** 2)
    return float(x[0] ** 2 + 1e8 * x[-1] ** 2 + 1e4 * np.sum(x[1:-1] ** 2))


def _axis_weights(d: int, spread: float) -> np.ndarray:
    if d == 1:
        return np.ones(1)
    return spread ** (np.arange(d) / (d - 1))


def ellipsoid(x):
    x = _check(x)
    return float(np.sum(_axis_weights(len(x), 1e6) * x**2))


def different_powers(x):
    x = _check(x)
    d = len(x)
    exponents = 2.0 + (4.0 * np.arange(d) / (d - 1) if d > 1 else np.zeros(1))
    return float(np.sum(np.abs(x) ** exponents))


def schwefel221(x):
    x = _check(x)
    return float(np.max(np.abs(x)))


def step(x):
    x = _check(x)
    return float(np.sum(np.floor(x + 0.5) ** 2))


def schwefel222(x):
    x = _check(x)
    ax = np.abs(x)
    return float(np.sum(ax) + np.prod(ax))


def rosenbrock(x):
    x = _check(x)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def schwefel12(x):
    x = _check(x)
    return float(np.sum(np.cumsum(x) ** 2))


def exponential(x):
    x = _check(x)
    return float(-np.exp(-0.5 * np.sum(x**2)))


def griewank(x):
    x = _check(x)
    d = len(x)
    return float(
        np.sum(x**2) / 4000.0 - np.prod(np.cos(x / np.sqrt(np.arange(1, d + 1)))) + 1.0
    )


def bohachevsky(x):
    x = _check(x)
    a, b = x[:-1], x[1:]
    return float(
        np.sum(
            a**2
            + 2.0 * b**2
            - 0.3 * np.cos(3.0 * np.pi * a)
            - 0.4 * np.cos(4.0 * np.pi * b)
            + 0.7
        )
    )


def ackley(x):
    x = _check(x)
    d = len(x)
    return float(
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2) / d))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x)) / d)
        + 20.0
        + np.e
    )


def rastrigin(x):
    x = _check(x)
    return float(10.0 * len(x) + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x)))


def scaled_rastrigin(x):
    x = _check(x)
    scaled = _axis_weights(len(x), 100.0) * x
    return float(
        10.0 * len(x) + np.sum(scaled**2 - 10.0 * np.cos(2.0 * np.pi * scaled))
    )


def skew_rastrigin(x):
    x = _check(x)
    skewed = np.where(x > 0.0, 10.0 * x, x)
    return float(
        10.0 * len(x) + np.sum(skewed**2 - 10.0 * np.cos(2.0 * np.pi * skewed))
    )


def levy_montalvo(x):
    x = _check(x)
    y = 1.0 + 0.25 * (x + 1.0)
    d = len(x)
    total = 10.0 * math.sin(math.pi * y[0]) ** 2 + (y[-1] - 1.0) ** 2
    if d > 1:
        total += float(
            np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[1:]) ** 2))
        )
    return float(math.pi / d * total)


def michalewicz(x):
    x = _check(x)
    i = np.arange(1, len(x) + 1)
    return float(-np.sum(np.sin(x) * np.sin(i * x**2 / np.pi) ** 20))


@dataclass(frozen=True)
class BaseFunction:
    """A named test function with its known optimum (if closed-form)."""

    function_id: str
    evaluator: Callable[[np.ndarray], float]
    global_minimum_value: float
    global_minimizer_description: str
    minimizer: Optional[Callable[[int], np.ndarray]]

    def known_minimizer(self, ndim: int):
        return None if self.minimizer is None else self.minimizer(ndim)


def _const(value):
    return lambda d: np.full(d, float(value))


_FUNCTIONS = [
    BaseFunction("sphere", sphere, 0.0, "the origin", _const(0.0)),
    BaseFunction("cigar", cigar, 0.0, "the origin", _const(0.0)),
    BaseFunction("discus", discus, 0.0, "the origin", _const(0.0)),
    BaseFunction("cigar_discus", cigar_discus, 0.0, "the origin", _const(0.0)),
    BaseFunction("ellipsoid", ellipsoid, 0.0, "the origin", _const(0.0)),
    BaseFunction("different_powers", different_powers, 0.0, "the origin", _const(0.0)),
    BaseFunction("schwefel221", schwefel221, 0.0, "the origin", _const(0.0)),
    BaseFunction("step", step, 0.0, "the origin (plateau |x| < 0.5)", _const(0.0)),
    BaseFunction("schwefel222", schwefel222, 0.0, "the origin", _const(0.0)),
    BaseFunction("rosenbrock", rosenbrock, 0.0, "the all-ones vector", _const(1.0)),
    BaseFunction("schwefel12", schwefel12, 0.0, "the origin", _const(0.0)),
    BaseFunction("exponential", exponential, -1.0, "the origin", _const(0.0)),
    BaseFunction("griewank", griewank, 0.0, "the origin", _const(0.0)),
    BaseFunction("bohachevsky", bohachevsky, 0.0, "the origin", _const(0.0)),
    BaseFunction("ackley", ackley, 0.0, "the origin", _const(0.0)),
    BaseFunction("rastrigin", rastrigin, 0.0, "the origin", _const(0.0)),
    BaseFunction("scaled_rastrigin", scaled_rastrigin, 0.0, "the origin", _const(0.0)),
    BaseFunction("skew_rastrigin", skew_rastrigin, 0.0, "the origin", _const(0.0)),
    BaseFunction("levy_montalvo", levy_montalvo, 0.0, "all coordinates at -1", _const(-1.0)),
    BaseFunction(
        "michalewicz",
        michalewicz,
        float("nan"),
        "no closed form (dimension dependent)",
        None,
    ),
]
# different_powers uses a flat exponent of 2 at d=1, which keeps it defined
# everywhere; rosenbrock and bohachevsky degenerate to 0 at d=1 (empty sums).

BASE_FUNCTIONS = {f.function_id: f for f in _FUNCTIONS}
FUNCTION_IDS = [f.function_id for f in _FUNCTIONS]


def get_base_function(function_id: str) -> BaseFunction:
    fn = BASE_FUNCTIONS.get(str(function_id).lower())
    if fn is None:
        raise UnknownVariant(
            f"unknown benchmark function {function_id!r}; known: {', '.join(FUNCTION_IDS)}"
        )
    return fn


def evaluate_base(function_id: str, x) -> float:
    """Evaluate the named base function at x."""
    return get_base_function(function_id).evaluator(x)
