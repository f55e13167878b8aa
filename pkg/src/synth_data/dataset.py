"""
Labeled feature datasets.

A LabeledDataset is the unit that flows between ingestion, standardization,
quantization and classification: a row-major feature matrix plus one integer
label per row.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class LabeledDataset:
    """
    Row-major feature matrix with integer class labels.

    Attributes:
        features: N x n float matrix
        labels: length-N integer vector
    """

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise DomainError(f"features must be a 2-D matrix, got shape {features.shape}")
        if labels.ndim != 1:
            raise DomainError(f"labels must be 1-D, got shape {labels.shape}")
        if features.shape[0] != labels.shape[0]:
            raise DomainError(
                f"row count {features.shape[0]} does not match label count {labels.shape[0]}"
            )
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise DomainError("labels must be integers")
        if not np.all(np.isfinite(features)):
            raise DomainError("features must be finite")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels.astype(np.int64))

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_dims(self) -> int:
        return int(self.features.shape[1])

    @property
    def classes(self) -> np.ndarray:
        """Sorted distinct labels."""
        return np.unique(self.labels)

    def class_counts(self) -> dict:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def subset(self, indices: Sequence[int]) -> "LabeledDataset":
        """Rows at the given indices, in the given order."""
        idx = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(self.features[idx], self.labels[idx])

    def select_classes(self, labels: Iterable[int]) -> "LabeledDataset":
        """Rows whose label is one of `labels`, original row order kept."""
        mask = np.isin(self.labels, np.asarray(list(labels)))
        return LabeledDataset(self.features[mask], self.labels[mask])

    def with_features(self, features: np.ndarray) -> "LabeledDataset":
        """Same labels, new feature matrix (e.g. quantized or standardized)."""
        return LabeledDataset(features, self.labels)

    def class_features(self, label: int) -> np.ndarray:
        return self.features[self.labels == label]
