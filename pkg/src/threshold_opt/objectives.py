"""
Threshold objectives g(tau) and their derivatives.

g is the negated enhancement condition, so g(tau) < 0 exactly when
quantizing at tau raises discrimination. alpha and beta are Phi-values;
their derivatives are density values scaled by 1/sigma.

The private helpers work on arrays of (mu, sigma) so that a set of
per-dimension models can share one uniform threshold.
"""

import math
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import special

from ..discrim.closed_form import binary_condition, ternary_condition
from ..errors import DomainError
from ..gaussian_stats.standardize import ClassPairModel
from ..quant_core.quantizer import QuantKind


_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _pdf(x: np.ndarray) -> np.ndarray:
    return _INV_SQRT_2PI * np.exp(-0.5 * x * x)


def _binary_value_and_slope(mu: np.ndarray, sigma: np.ndarray, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    za, zb = (tau - mu) / sigma, (tau + mu) / sigma
    alpha, beta = special.ndtr(za), special.ndtr(zb)
    d_alpha, d_beta = _pdf(za) / sigma, _pdf(zb) / sigma
    mu2 = mu * mu
    radical = np.sqrt(mu2 + 4.0 * beta * (1.0 - beta))
    value = -beta + alpha - (mu2 * (1.0 - 2.0 * beta) - mu * radical) / (1.0 + mu2)
    slope = (
        -((1.0 - mu2) / (1.0 + mu2)) * d_beta
        + d_alpha
        + mu * (2.0 * d_beta - 4.0 * beta * d_beta) / ((1.0 + mu2) * radical)
    )
    return value, slope


def _ternary_value_and_slope(mu: np.ndarray, sigma: np.ndarray, tau: float) -> Tuple[np.ndarray, np.ndarray]:
    za, zb = (-tau - mu) / sigma, (-tau + mu) / sigma
    alpha, beta = special.ndtr(za), special.ndtr(zb)
    d_alpha, d_beta = -_pdf(za) / sigma, -_pdf(zb) / sigma
    mu2 = mu * mu
    value = -beta + alpha - 0.5 * (mu2 - np.sqrt(mu2 * mu2 + 8.0 * mu2 * beta))
    slope = -d_beta + d_alpha + 2.0 * mu * d_beta / np.sqrt(mu2 + 8.0 * beta)
    return value, slope


def binary_objective(model: ClassPairModel, tau: float) -> float:
    return -binary_condition(model, tau)


def binary_gradient(model: ClassPairModel, tau: float) -> float:
    """
    g'(tau) = -((1 - mu^2)/(1 + mu^2)) beta' + alpha'
              + mu (2 beta' - 4 beta beta') / ((1 + mu^2) sqrt(mu^2 + 4 beta (1 - beta)))
    """
    _, slope = _binary_value_and_slope(np.float64(model.mu), np.float64(model.sigma), float(tau))
    return float(slope)


def ternary_objective(model: ClassPairModel, tau: float) -> float:
    return -ternary_condition(model, tau)


def ternary_gradient(model: ClassPairModel, tau: float) -> float:
    """g'(tau) = -beta' + alpha' + 2 mu beta' / sqrt(mu^2 + 8 beta), for tau >= 0."""
    _, slope = _ternary_value_and_slope(np.float64(model.mu), np.float64(model.sigma), float(tau))
    return float(slope)


class MeanObjective:
    """
    Mean objective over several models sharing one threshold.

    Calling the instance returns (g, g') at tau.
    """

    def __init__(self, models: Sequence[ClassPairModel], kind: QuantKind):
        if not models:
            raise DomainError("at least one model is required")
        self.kind = QuantKind(kind)
        self.mu = np.array([m.mu for m in models], dtype=np.float64)
        self.sigma = np.array([m.sigma for m in models], dtype=np.float64)
        self._terms: Callable = (
            _binary_value_and_slope if self.kind is QuantKind.BINARY else _ternary_value_and_slope
        )

    def __len__(self) -> int:
        return int(self.mu.size)

    def __call__(self, tau: float) -> Tuple[float, float]:
        value, slope = self._terms(self.mu, self.sigma, float(tau))
        return float(np.mean(value)), float(np.mean(slope))

    def value(self, tau: float) -> float:
        return self(tau)[0]

    @property
    def mean_sigma(self) -> float:
        return float(np.mean(self.sigma))
