"""Classification losses turning a dataset into a black-box objective.

The weight vector has length n_features + 1 with the bias last; the margin
is m = w @ f + b.  The objective is the mean per-sample loss plus
regularization * ||w||^2 (bias excluded).  The five losses span
convex-smooth (logistic, ridge_logistic), convex-nonsmooth (hinge),
convex-piecewise-smooth (squared_hinge), and nonconvex (sigmoid) landscapes.
"""

import numpy as np

from ..core.errors import DimensionMismatch, UnknownVariant
from .datasets import TabularDataset

LOSS_IDS = ["logistic", "hinge", "squared_hinge", "ridge_logistic", "sigmoid_nonconvex"]
RIDGE_DEFAULT_REGULARIZATION = 1e-3


def _margins(weights, dataset: TabularDataset):
    weights = np.asarray(weights, dtype=float).ravel()
    expected = dataset.n_features + 1
    if len(weights) != expected:
        raise DimensionMismatch(
            f"weights must have length n_features + 1 = {expected}, got {len(weights)}"
        )
    w, bias = weights[:-1], weights[-1]
    return dataset.features @ w + bias, w


def _logistic(z):
    # log(1 + exp(-z)) without overflow
    return np.logaddexp(0.0, -z)


def _sigmoid(z):
    # 1 / (1 + exp(z)) without overflow
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = np.exp(-z[pos]) / (1.0 + np.exp(-z[pos]))
    out[~pos] = 1.0 / (1.0 + np.exp(z[~pos]))
    return out


def classification_objective(
    loss_id: str, weights, dataset: TabularDataset, regularization: float = 0.0
) -> float:
    """Mean per-sample loss plus regularization * ||w||^2 (bias excluded)."""
    loss_id = str(loss_id).lower()
    if loss_id not in LOSS_IDS:
        raise UnknownVariant(
            f"unknown loss {loss_id!r}; known: {', '.join(LOSS_IDS)}"
        )
    margins, w = _margins(weights, dataset)
    ym = dataset.labels * margins
    if loss_id == "logistic":
        per_sample = _logistic(ym)
    elif loss_id == "ridge_logistic":
        per_sample = _logistic(ym)
        if regularization <= 0.0:
            regularization = RIDGE_DEFAULT_REGULARIZATION
    elif loss_id == "hinge":
        per_sample = np.maximum(0.0, 1.0 - ym)
    elif loss_id == "squared_hinge":
        per_sample = np.maximum(0.0, 1.0 - ym) ** 2
    else:  # sigmoid_nonconvex
        per_sample = _sigmoid(ym)
    return float(np.mean(per_sample) + regularization * float(w @ w))


def make_classification_fitness(loss_id, dataset, regularization: float = 0.0):
    """A closure suitable as a Problem fitness function."""

    def fitness(weights):
        return classification_objective(loss_id, weights, dataset, regularization)

    return fitness
