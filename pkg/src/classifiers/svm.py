"""
Linear SVM trained by stochastic subgradient descent on the L2-regularized
hinge loss (scikit-learn SGDClassifier), reduced to a plain (weights, bias)
model for prediction.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.linear_model import SGDClassifier

from ..errors import DegenerateClassesError, DomainError
from ..synth_data.dataset import LabeledDataset


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SvmConfig:
    """
    Attributes:
        regularization: L2 penalty strength (> 0)
        epochs: Passes over the training set
        seed: Shuffling seed
    """

    regularization: float = 1e-4
    epochs: int = 50
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.regularization > 0.0:
            raise DomainError(f"regularization must be positive, got {self.regularization}")
        if int(self.epochs) < 1:
            raise DomainError(f"epochs must be >= 1, got {self.epochs}")

    @classmethod
    def from_config(cls, config: Any, **overrides: Any) -> "SvmConfig":
        values = {
            "regularization": float(config.get("svm", "regularization", 1e-4)),
            "epochs": int(config.get("svm", "epochs", 50)),
            "seed": int(config.get("harness", "seed", 0)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class LinearSvmModel:
    """Affine decision function w.x + b; positive scores map to classes[1]."""

    weights: np.ndarray
    bias: float
    classes: np.ndarray

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        rows = np.asarray(features, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if rows.shape[1] != self.weights.size:
            raise DomainError(f"feature width {rows.shape[1]} does not match model width {self.weights.size}")
        return rows @ self.weights + self.bias


def svm_train(train: LabeledDataset, cfg: SvmConfig = SvmConfig()) -> LinearSvmModel:
    """
    Fit a linear SVM on a two-class dataset.

    Raises:
        DegenerateClassesError: If the training set holds a single class
        DomainError: If it holds more than two classes
    """
    classes = train.classes
    if classes.size < 2:
        raise DegenerateClassesError("SVM training needs two classes, got one")
    if classes.size > 2:
        raise DomainError(f"linear SVM is binary; got {classes.size} classes")

    estimator = SGDClassifier(
        loss="hinge",
        penalty="l2",
        alpha=cfg.regularization,
        max_iter=int(cfg.epochs),
        tol=None,
        shuffle=True,
        random_state=int(cfg.seed) % (2 ** 32),
    )
    estimator.fit(train.features, train.labels)
    logger.debug("SVM trained on %d rows, %d epochs", train.n_samples, cfg.epochs)
    return LinearSvmModel(
        weights=estimator.coef_.ravel().astype(np.float64),
        bias=float(estimator.intercept_[0]),
        classes=np.asarray(estimator.classes_),
    )


def svm_predict(model: LinearSvmModel, features: np.ndarray) -> np.ndarray:
    scores = model.decision_function(features)
    return np.where(scores > 0.0, model.classes[1], model.classes[0]).astype(np.int64)
