"""
Z-score standardization of two-class Gaussian mixtures.

Standardizing an equal-variance mixture of N(mu1, s^2) and N(mu2, s^2) with
equal priors gives two symmetric classes N(+mu, sigma^2) and N(-mu, sigma^2)
with mu^2 + sigma^2 = 1. ClassPairModel is that standardized form and the
parameterization the discrimination and solver modules work with.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..errors import DegenerateClassesError, DomainError
from ..synth_data.dataset import LabeledDataset


logger = logging.getLogger(__name__)

# Population variance below this marks a constant dimension
CONSTANT_VARIANCE = 1e-15


@dataclass(frozen=True)
class ClassPairModel:
    """
    Two symmetric Gaussian classes N(+mu, sigma^2) and N(-mu, sigma^2).

    Attributes:
        mu: Class-0 mean, in (0, 1)
        sigma: Shared standard deviation, > 0
        swapped: True when standardize_params swapped the class roles to make mu positive
    """

    mu: float
    sigma: float
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and 0.0 < self.mu < 1.0):
            raise DomainError(f"mu must lie in (0, 1), got {self.mu}")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise DegenerateClassesError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def standardized(cls, mu: float) -> "ClassPairModel":
        """Model on the unit circle: sigma = sqrt(1 - mu^2)."""
        mu = float(mu)
        if not (math.isfinite(mu) and 0.0 < mu < 1.0):
            raise DomainError(f"mu must lie in (0, 1), got {mu}")
        return cls(mu=mu, sigma=math.sqrt(1.0 - mu * mu))

    @property
    def sigma2(self) -> float:
        return self.sigma * self.sigma


@dataclass(frozen=True)
class RawClassParams:
    """
    Two equal-variance classes X ~ N(mu1, sigma2) and Y ~ N(mu2, sigma2).

    The mixture Z (equal priors) has mean E[Z] = (mu1 + mu2) / 2 and variance
    D[Z] = sigma2 + (mu1 - mu2)^2 / 4.
    """

    mu1: float
    mu2: float
    sigma2: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.mu1, self.mu2, self.sigma2)):
            raise DomainError("class parameters must be finite")
        if self.sigma2 <= 0.0:
            raise DegenerateClassesError(f"sigma2 must be positive, got {self.sigma2}")
        if self.mu1 == self.mu2:
            raise DegenerateClassesError("class means are equal; the classes are indistinguishable")

    @property
    def mixture_mean(self) -> float:
        return 0.5 * (self.mu1 + self.mu2)

    @property
    def mixture_variance(self) -> float:
        half_gap = 0.5 * (self.mu1 - self.mu2)
        return self.sigma2 + half_gap * half_gap


def standardize_params(raw: RawClassParams) -> ClassPairModel:
    """
    Map raw class parameters to their standardized ClassPairModel.

    mu = ((mu1 - mu2) / 2) / sqrt(D[Z]), sigma^2 = sigma2 / D[Z]. When
    mu1 < mu2 the classes are swapped so that mu is positive, and the
    returned model has swapped=True.

    Raises:
        DegenerateClassesError: If mu1 == mu2 (raised by RawClassParams)
        DomainError: If the variance is negligible next to the separation
    """
    half_gap = 0.5 * (raw.mu1 - raw.mu2)
    swapped = half_gap < 0.0
    scale = math.sqrt(raw.mixture_variance)
    mu = abs(half_gap) / scale
    sigma = math.sqrt(raw.sigma2) / scale
    if mu >= 1.0:
        raise DomainError("class variance is negligible next to the mean separation")
    return ClassPairModel(mu=mu, sigma=sigma, swapped=swapped)


def standardize_features(features: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    Per-dimension Z-score with population (divisor-N) statistics.

    Args:
        features: N x n matrix

    Returns:
        Tuple of (standardized matrix, indices of constant dimensions). Constant
        dimensions are returned as all zeros.
    """
    features = np.asarray(features, dtype=np.float64)
    mean = features.mean(axis=0)
    var = features.var(axis=0)
    constant = var < CONSTANT_VARIANCE
    std = np.sqrt(np.where(constant, 1.0, var))
    out = (features - mean) / std
    out[:, constant] = 0.0
    return out, [int(i) for i in np.flatnonzero(constant)]


def standardize_dataset(data: LabeledDataset) -> LabeledDataset:
    """
    Z-score every dimension over the pooled mixture of all classes.

    Constant dimensions come back as all zeros and are reported in a warning.
    """
    standardized, constant = standardize_features(data.features)
    if constant:
        logger.warning(
            "%d constant dimension(s) passed through as zeros: %s",
            len(constant),
            constant[:20] if len(constant) > 20 else constant,
        )
    return data.with_features(standardized)


def fit_dimension_models(data: LabeledDataset) -> List[ClassPairModel]:
    """
    Fit one ClassPairModel per dimension of a two-class dataset.

    Class means and the pooled within-class population variance feed
    standardize_params. Dimensions whose class means coincide, or whose
    within-class variance vanishes, carry no usable model and are skipped with
    a warning.

    Raises:
        DegenerateClassesError: If the dataset does not hold exactly two classes
            or no dimension yields a model
    """
    classes = data.classes
    if classes.size != 2:
        raise DegenerateClassesError(f"expected exactly two classes, got {classes.size}")

    first = data.class_features(int(classes[0]))
    second = data.class_features(int(classes[1]))
    means_first, means_second = first.mean(axis=0), second.mean(axis=0)
    pooled_var = 0.5 * (first.var(axis=0) + second.var(axis=0))

    models: List[ClassPairModel] = []
    skipped: List[int] = []
    for dim in range(data.n_dims):
        try:
            raw = RawClassParams(float(means_first[dim]), float(means_second[dim]), float(pooled_var[dim]))
            models.append(standardize_params(raw))
        except DomainError:
            skipped.append(dim)

    if skipped:
        logger.warning("Skipped %d dimension(s) without a usable class model", len(skipped))
    if not models:
        raise DegenerateClassesError("no dimension separates the two classes")
    return models
