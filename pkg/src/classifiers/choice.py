"""
Command-line classifier selection.
"""

from enum import Enum
from typing import Optional

import numpy as np

from ..synth_data.dataset import LabeledDataset
from .knn import KnnConfig, KnnMetric, knn_predict
from .svm import SvmConfig, svm_predict, svm_train


class ClassifierChoice(str, Enum):
    KNN_EUCLID = "knn-euclid"
    KNN_COSINE = "knn-cosine"
    SVM = "svm"

    @classmethod
    def for_metric(cls, metric: KnnMetric) -> "ClassifierChoice":
        """The KNN choice that uses `metric`."""
        return cls.KNN_COSINE if KnnMetric(metric) is KnnMetric.COSINE else cls.KNN_EUCLID


def train_and_predict(
    choice: ClassifierChoice,
    train: LabeledDataset,
    test_features: np.ndarray,
    k: int = 5,
    svm_cfg: Optional[SvmConfig] = None,
) -> np.ndarray:
    """Train the chosen classifier on `train` and label `test_features`."""
    choice = ClassifierChoice(choice)
    if choice is ClassifierChoice.SVM:
        return svm_predict(svm_train(train, svm_cfg or SvmConfig()), test_features)
    metric = KnnMetric.EUCLIDEAN if choice is ClassifierChoice.KNN_EUCLID else KnnMetric.COSINE
    return knn_predict(train, test_features, KnnConfig(k=k, metric=metric))
