"""Benchmark functions, rotated/shifted instances, datasets, and losses."""

from .base_functions import (
    BASE_FUNCTIONS,
    FUNCTION_IDS,
    BaseFunction,
    evaluate_base,
    get_base_function,
)
from .datasets import ParseError, TabularDataset, UnlabeledRow, load_dataset
from .instances import BenchmarkInstance, make_instance, random_rotation
from .losses import (
    LOSS_IDS,
    classification_objective,
    make_classification_fitness,
)

__all__ = [
    "BASE_FUNCTIONS",
    "BaseFunction",
    "BenchmarkInstance",
    "FUNCTION_IDS",
    "LOSS_IDS",
    "ParseError",
    "TabularDataset",
    "UnlabeledRow",
    "classification_objective",
    "evaluate_base",
    "get_base_function",
    "load_dataset",
    "make_classification_fitness",
    "make_instance",
    "random_rotation",
]
