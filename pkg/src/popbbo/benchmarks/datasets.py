"""Tabular dataset ingestion for black-box classification objectives.

Two file formats: CSV with a header row (label column named ``label`` or
the last column) and a libsvm-like sparse format (``<label> idx:val ...``,
1-based indices).  Labels are mapped to {-1, +1}; multiclass sources are
reduced one-vs-rest on the majority class (majority -> +1, ties broken by
the smaller label value).  Features are z-score normalized per column;
constant columns become all zeros.
"""

import csv
from dataclasses import dataclass

import numpy as np

from ..core.errors import BboError, InvalidOption


class ParseError(BboError):
    """A data file could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnlabeledRow(ParseError):
    """A data row is missing its label."""


@dataclass(frozen=True)
class TabularDataset:
    """Normalized features with labels in {-1, +1}."""

    features: np.ndarray
    labels: np.ndarray
    source_name: str

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


def _binarize_labels(raw: np.ndarray) -> np.ndarray:
    classes, counts = np.unique(raw, return_counts=True)
    if len(classes) < 2:
        raise InvalidOption("dataset has a single class; nothing to separate")
    if len(classes) == 2:
        low, high = sorted(classes)
        return np.where(raw == high, 1.0, -1.0)
    majority = classes[np.argmax(counts)]  # np.unique sorts, so ties pick the
    return np.where(raw == majority, 1.0, -1.0)  # smallest label value


def _normalize(features: np.ndarray) -> np.ndarray:
    mean = features.mean(axis=0)
    std = features.std(axis=0)
    constant = std < 1e-300
    safe_std = np.where(constant, 1.0, std)
    normalized = (features - mean) / safe_std
    normalized[:, constant] = 0.0
    return normalized


def _parse_csv(path: str):
    rows, labels = [], []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", 1) from None
        header = [h.strip() for h in header]
        lowered = [h.lower() for h in header]
        label_col = lowered.index("label") if "label" in lowered else len(header) - 1
        n_cols = len(header)
        for line_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != n_cols:
                raise ParseError(
                    f"expected {n_cols} columns, found {len(row)}", line_number
                )
            if not row[label_col].strip():
                raise UnlabeledRow("missing label", line_number)
            try:
                numeric = [float(cell) for cell in row]
            except ValueError as exc:
                raise ParseError(str(exc), line_number) from None
            labels.append(numeric[label_col])
            rows.append([v for i, v in enumerate(numeric) if i != label_col])
    return rows, labels


def _parse_libsvm(path: str):
    rows, labels = [], []
    max_index = 0
    with open(path) as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            first = parts[0]
            if ":" in first:
                raise UnlabeledRow("row starts with a feature, not a label", line_number)
            try:
                label = float(first)
            except ValueError:
                raise ParseError(f"bad label {first!r}", line_number) from None
            entries = {}
            for token in parts[1:]:
                if ":" not in token:
                    raise ParseError(f"bad feature token {token!r}", line_number)
                idx_text, val_text = token.split(":", 1)
                try:
                    idx = int(idx_text)
                    val = float(val_text)
                except ValueError:
                    raise ParseError(f"bad feature token {token!r}", line_number) from None
                if idx < 1:
                    raise ParseError(f"feature index must be >= 1, got {idx}", line_number)
                entries[idx - 1] = val
                max_index = max(max_index, idx)
            labels.append(label)
            rows.append(entries)
    dense = [[row.get(j, 0.0) for j in range(max_index)] for row in rows]
    return dense, labels


def load_dataset(path: str, format: str = "csv_with_header") -> TabularDataset:
    """Load, binarize, and z-score normalize a tabular dataset."""
    if format == "csv_with_header":
        rows, labels = _parse_csv(path)
    elif format == "libsvm_like":
        rows, labels = _parse_libsvm(path)
    else:
        raise InvalidOption(
            f"format must be csv_with_header or libsvm_like, got {format!r}"
        )
    if not rows:
        raise ParseError("no data rows", 1)
    features = np.asarray(rows, dtype=float)
    if np.any(np.isnan(features)):
        raise InvalidOption("dataset contains NaN features after parsing")
    return TabularDataset(
        features=_normalize(features),
        labels=_binarize_labels(np.asarray(labels, dtype=float)),
        source_name=str(path),
    )
