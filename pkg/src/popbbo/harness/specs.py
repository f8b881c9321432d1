"""Parsing of instance specification strings for the harness and CLI.

Forms:
  ``<function_id>:<ndim>:<instance_seed>``  rotated+shifted instance
  ``<function_id>:<ndim>``                  plain (light-weight) base function
  ``cls:<loss_id>:<dataset_path>``          classification objective
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..benchmarks.base_functions import get_base_function
from ..benchmarks.datasets import load_dataset
from ..benchmarks.instances import DEFAULT_LOWER, DEFAULT_UPPER, make_instance
from ..benchmarks.losses import LOSS_IDS, make_classification_fitness
from ..core.errors import BboError
from ..core.problem import Problem, build_problem

CLASSIFICATION_BOUND = 10.0


class InstanceParseError(BboError):
    """An instance specification string could not be parsed."""


@dataclass(frozen=True)
class InstanceTarget:
    """A resolved instance spec: a Problem plus its display label."""

    label: str
    problem: Problem


def _dataset_format(path: str) -> str:
    return "csv_with_header" if path.lower().endswith(".csv") else "libsvm_like"


def resolve_instance(spec: str) -> InstanceTarget:
    """Build the Problem described by an instance spec string."""
    spec = str(spec).strip()
    parts = spec.split(":")
    if not spec or not parts[0]:
        raise InstanceParseError(f"empty instance spec {spec!r}")
    if parts[0].lower() == "cls":
        if len(parts) < 3:
            raise InstanceParseError(
                f"classification spec must be cls:<loss_id>:<dataset_path>, got {spec!r}"
            )
        loss_id = parts[1].lower()
        if loss_id not in LOSS_IDS:
            raise InstanceParseError(
                f"unknown loss {loss_id!r}; known: {', '.join(LOSS_IDS)}"
            )
        path = ":".join(parts[2:])
        try:
            dataset = load_dataset(path, _dataset_format(path))
        except OSError as exc:
            raise InstanceParseError(f"cannot read dataset {path!r}: {exc}") from exc
        ndim = dataset.n_features + 1
        problem = build_problem(
            make_classification_fitness(loss_id, dataset),
            ndim,
            -CLASSIFICATION_BOUND,
            CLASSIFICATION_BOUND,
        )
        return InstanceTarget(spec, problem)
    if len(parts) not in (2, 3):
        raise InstanceParseError(
            f"benchmark spec must be <function_id>:<ndim>[:<instance_seed>], got {spec!r}"
        )
    function_id = parts[0].lower()
    try:
        base = get_base_function(function_id)
    except BboError as exc:
        raise InstanceParseError(str(exc)) from exc
    try:
        ndim = int(parts[1])
    except ValueError:
        raise InstanceParseError(f"bad dimension {parts[1]!r} in {spec!r}") from None
    if ndim < 1:
        raise InstanceParseError(f"dimension must be >= 1, got {ndim}")
    if len(parts) == 2:
        problem = build_problem(base.evaluator, ndim, DEFAULT_LOWER, DEFAULT_UPPER)
        return InstanceTarget(spec, problem)
    try:
        instance_seed = int(parts[2])
    except ValueError:
        raise InstanceParseError(f"bad instance seed {parts[2]!r} in {spec!r}") from None
    instance = make_instance(function_id, ndim, instance_seed)
    problem = build_problem(
        instance.evaluate, ndim, instance.lower_boundary, instance.upper_boundary
    )
    return InstanceTarget(spec, problem)


def fill_vector(value: Optional[float], ndim: int):
    """Broadcast a scalar initial-mean fill to a vector (None passes through)."""
    if value is None:
        return None
    return np.full(ndim, float(value))
