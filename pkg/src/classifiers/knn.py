"""
k-nearest-neighbour classification with Euclidean or cosine distance.

Neighbour selection is exact and deterministic: among equal distances the
lower training-row index wins, and vote ties go to the lower label.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import DomainError
from ..synth_data.dataset import LabeledDataset


logger = logging.getLogger(__name__)

# Upper bound on distance-matrix entries held at once
_CHUNK_ENTRIES = 4_000_000


class KnnMetric(str, Enum):
    EUCLIDEAN = "euclidean"
    COSINE = "cosine"


@dataclass(frozen=True)
class KnnConfig:
    """
    Attributes:
        k: Number of neighbours (>= 1)
        metric: Euclidean or cosine distance
    """

    k: int = 5
    metric: KnnMetric = KnnMetric.EUCLIDEAN

    def __post_init__(self) -> None:
        object.__setattr__(self, "metric", KnnMetric(self.metric))
        if int(self.k) < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if int(self.k) % 2 == 0:
            logger.debug("Even k=%d; vote ties fall to the lower label", self.k)

    @classmethod
    def from_config(cls, config: Any, **overrides: Any) -> "KnnConfig":
        values = {
            "k": int(config.get("knn", "k", 5)),
            "metric": config.get("knn", "metric", KnnMetric.EUCLIDEAN.value),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class KnnClassifier:
    """
    Brute-force KNN over a fixed training set.

    `zero_norm_count` accumulates the number of zero-norm rows met under the
    cosine metric; those rows sit at distance 1 from every other row.
    """

    def __init__(self, cfg: Optional[KnnConfig] = None):
        self.cfg = cfg or KnnConfig()
        self.zero_norm_count = 0
        self._features: Optional[np.ndarray] = None
        self._label_index: Optional[np.ndarray] = None
        self._norms: Optional[np.ndarray] = None
        self.classes_: Optional[np.ndarray] = None

    def fit(self, train: LabeledDataset) -> "KnnClassifier":
        if train.n_samples == 0:
            raise DomainError("training set is empty")
        self._features = train.features
        self.classes_, self._label_index = np.unique(train.labels, return_inverse=True)
        if self.cfg.metric is KnnMetric.COSINE:
            self._norms = np.linalg.norm(self._features, axis=1)
            zero_rows = int(np.count_nonzero(self._norms == 0.0))
            if zero_rows:
                logger.warning("%d zero-norm training row(s) under cosine distance", zero_rows)
            self.zero_norm_count += zero_rows
        return self

    def _distances(self, rows: np.ndarray) -> np.ndarray:
        if self.cfg.metric is KnnMetric.EUCLIDEAN:
            # Squared distances give the same ordering
            return cdist(rows, self._features, "sqeuclidean")

        row_norms = np.linalg.norm(rows, axis=1)
        self.zero_norm_count += int(np.count_nonzero(row_norms == 0.0))
        denom = np.outer(row_norms, self._norms)
        dots = rows @ self._features.T
        with np.errstate(divide="ignore", invalid="ignore"):
            cosine = np.where(denom > 0.0, dots / denom, 0.0)
        return 1.0 - cosine

    def _select(self, dist: np.ndarray, k: int) -> np.ndarray:
        """Boolean mask of the k nearest columns per row, lower index first on ties."""
        kth = np.partition(dist, k - 1, axis=1)[:, k - 1:k]
        closer = dist < kth
        need = k - closer.sum(axis=1, keepdims=True)
        equal = dist == kth
        return closer | (equal & (np.cumsum(equal, axis=1) <= need))

    def predict(self, features: np.ndarray) -> np.ndarray:
        """
        Predict one label per row of `features`.

        Raises:
            DomainError: If called before fit or with a mismatched feature width
        """
        if self._features is None:
            raise DomainError("classifier has not been fitted")
        rows = np.asarray(features, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if rows.shape[1] != self._features.shape[1]:
            raise DomainError(
                f"feature width {rows.shape[1]} does not match training width {self._features.shape[1]}"
            )

        n_train = self._features.shape[0]
        k = min(int(self.cfg.k), n_train)
        if k < self.cfg.k:
            logger.warning("k=%d exceeds the %d training rows; using k=%d", self.cfg.k, n_train, k)

        onehot = np.zeros((n_train, self.classes_.size), dtype=np.int64)
        onehot[np.arange(n_train), self._label_index] = 1
        chunk = max(1, _CHUNK_ENTRIES // max(n_train, 1))
        zero_before = self.zero_norm_count

        predictions = np.empty(rows.shape[0], dtype=np.int64)
        for start in range(0, rows.shape[0], chunk):
            block = rows[start:start + chunk]
            selected = self._select(self._distances(block), k)
            votes = selected.astype(np.int64) @ onehot
            predictions[start:start + chunk] = self.classes_[np.argmax(votes, axis=1)]

        if self.zero_norm_count > zero_before:
            logger.warning(
                "%d zero-norm test row(s) under cosine distance treated as maximally distant",
                self.zero_norm_count - zero_before,
            )
        return predictions


def knn_predict(train: LabeledDataset, test_features: np.ndarray, cfg: Optional[KnnConfig] = None) -> np.ndarray:
    """Fit a KnnClassifier on `train` and label `test_features`."""
    return KnnClassifier(cfg).fit(train).predict(test_features)
