"""
Closed-form discrimination of original and quantized two-class data.

For X ~ N(mu, sigma^2), Y ~ N(-mu, sigma^2), discrimination is the expected
inter-class squared distance over the sum of the two expected intra-class
squared distances:

    D   = (sigma^2 + 2 mu^2) / (2 sigma^2)
    D_b = (a - 2ab + b) / (2a - 2a^2 + 2b - 2b^2),       a = Phi((tau - mu)/sigma), b = Phi((tau + mu)/sigma)
    D_t = (a + a^2 - 2ab + b + b^2) / (2(a - a^2 + 2ab + b - b^2)),
                                                      a = Phi((-tau - mu)/sigma), b = Phi((-tau + mu)/sigma)

The condition functions are positive exactly when quantization raises
discrimination (D_b > D, D_t > D).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from ..errors import DegenerateClassesError, DomainError, SaturationError
from ..gaussian_stats.standardize import ClassPairModel
from ..quant_core.quantizer import QuantKind, QuantScheme


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Probabilities are clamped into this band before closed-form ratios
ALPHA_FLOOR = 1e-300
ALPHA_CEIL = 1.0 - 1e-16


def _tau_array(tau: ArrayLike) -> np.ndarray:
    values = np.asarray(tau, dtype=np.float64)
    if np.any(np.isnan(values)):
        raise DomainError("threshold must not be NaN")
    return values


def _unwrap(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def binary_alpha_beta(model: ClassPairModel, tau: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """alpha = Phi((tau - mu)/sigma), beta = Phi((tau + mu)/sigma)."""
    t = _tau_array(tau)
    return special.ndtr((t - model.mu) / model.sigma), special.ndtr((t + model.mu) / model.sigma)


def ternary_alpha_beta(model: ClassPairModel, tau: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """alpha = Phi((-tau - mu)/sigma), beta = Phi((-tau + mu)/sigma)."""
    t = _tau_array(tau)
    if np.any(t < 0.0):
        raise DomainError("ternary threshold must be >= 0")
    return special.ndtr((-t - model.mu) / model.sigma), special.ndtr((-t + model.mu) / model.sigma)


def _clamp(p: np.ndarray) -> np.ndarray:
    return np.clip(p, ALPHA_FLOOR, ALPHA_CEIL)


def d_original(model: ClassPairModel) -> float:
    """Discrimination of the unquantized classes, always > 1/2."""
    if model.sigma <= 0.0:
        raise DegenerateClassesError("sigma must be positive")
    return (model.sigma2 + 2.0 * model.mu * model.mu) / (2.0 * model.sigma2)


def d_binary(model: ClassPairModel, tau: ArrayLike) -> ArrayLike:
    """
    Discrimination after binary quantization at tau.

    Raises:
        SaturationError: If both classes collapse onto one binary level
    """
    alpha, beta = binary_alpha_beta(model, tau)
    collapsed = ((alpha < ALPHA_FLOOR) & (beta < ALPHA_FLOOR)) | (
        (alpha > ALPHA_CEIL) & (beta > ALPHA_CEIL)
    )
    if np.any(collapsed):
        raise SaturationError("binary threshold saturates both classes onto one level")
    a, b = _clamp(alpha), _clamp(beta)
    numerator = a - 2.0 * a * b + b
    denominator = 2.0 * a - 2.0 * a * a + 2.0 * b - 2.0 * b * b
    return _unwrap(numerator / denominator)


def d_ternary(model: ClassPairModel, tau: ArrayLike) -> ArrayLike:
    """
    Discrimination after ternary quantization at tau >= 0.

    Raises:
        SaturationError: If all probability mass quantizes to 0 (alpha + beta underflows)
    """
    alpha, beta = ternary_alpha_beta(model, tau)
    if np.any(alpha + beta < ALPHA_FLOOR):
        raise SaturationError("ternary threshold quantizes all mass to 0")
    a, b = _clamp(alpha), _clamp(beta)
    numerator = a + a * a - 2.0 * a * b + b + b * b
    denominator = 2.0 * (a - a * a + 2.0 * a * b + b - b * b)
    return _unwrap(numerator / denominator)


def d_quantized(model: ClassPairModel, scheme: QuantScheme) -> float:
    if scheme.kind is QuantKind.BINARY:
        return d_binary(model, scheme.tau)
    return d_ternary(model, scheme.tau)


def binary_condition(model: ClassPairModel, tau: ArrayLike) -> ArrayLike:
    """
    Left-hand side of the binary enhancement condition.

        beta - alpha + (mu^2 (1 - 2 beta) - mu sqrt(mu^2 + 4 beta (1 - beta))) / (1 + mu^2)

    Positive exactly when d_binary(model, tau) > d_original(model).
    """
    alpha, beta = binary_alpha_beta(model, tau)
    mu2 = model.mu * model.mu
    radical = np.sqrt(mu2 + 4.0 * beta * (1.0 - beta))
    return _unwrap(beta - alpha + (mu2 * (1.0 - 2.0 * beta) - model.mu * radical) / (1.0 + mu2))


def ternary_condition(model: ClassPairModel, tau: ArrayLike) -> ArrayLike:
    """
    Left-hand side of the ternary enhancement condition.

        beta - alpha + (mu^2 - sqrt(mu^4 + 8 mu^2 beta)) / 2

    Positive exactly when d_ternary(model, tau) > d_original(model).
    """
    alpha, beta = ternary_alpha_beta(model, tau)
    mu2 = model.mu * model.mu
    return _unwrap(beta - alpha + 0.5 * (mu2 - np.sqrt(mu2 * mu2 + 8.0 * mu2 * beta)))


def condition(model: ClassPairModel, kind: QuantKind, tau: ArrayLike) -> ArrayLike:
    if QuantKind(kind) is QuantKind.BINARY:
        return binary_condition(model, tau)
    return ternary_condition(model, tau)


@dataclass(frozen=True)
class DiscriminationReport:
    """Discrimination values and the enhancement condition at one (model, tau) point."""

    model: ClassPairModel
    scheme: QuantScheme
    alpha: float
    beta: float
    d_original: float
    d_quantized: float
    condition_value: float

    @property
    def condition_holds(self) -> bool:
        return self.condition_value > 0.0

    def to_dict(self) -> dict:
        return {
            "mu": self.model.mu,
            "sigma": self.model.sigma,
            "swapped": self.model.swapped,
            "kind": self.scheme.kind.value,
            "tau": self.scheme.tau,
            "alpha": self.alpha,
            "beta": self.beta,
            "d_original": self.d_original,
            "d_quantized": self.d_quantized,
            "condition_value": self.condition_value,
            "condition_holds": self.condition_holds,
        }


def evaluate(model: ClassPairModel, scheme: QuantScheme) -> DiscriminationReport:
    """Build the full DiscriminationReport for one quantization scheme."""
    if scheme.kind is QuantKind.BINARY:
        alpha, beta = binary_alpha_beta(model, scheme.tau)
    else:
        alpha, beta = ternary_alpha_beta(model, scheme.tau)
    return DiscriminationReport(
        model=model,
        scheme=scheme,
        alpha=float(alpha),
        beta=float(beta),
        d_original=d_original(model),
        d_quantized=float(d_quantized(model, scheme)),
        condition_value=float(condition(model, scheme.kind, scheme.tau)),
    )


def condition_region(
    model: ClassPairModel, kind: QuantKind, tau_grid: Sequence[float]
) -> List[Tuple[float, float]]:
    """
    Maximal runs of consecutive grid points where the condition is positive.

    Returns:
        List of (first_tau, last_tau) pairs in grid order
    """
    taus = np.asarray(tau_grid, dtype=np.float64)
    positive = np.asarray(condition(model, kind, taus)) > 0.0
    regions: List[Tuple[float, float]] = []
    start: Optional[int] = None
    for i, flag in enumerate(positive):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            regions.append((float(taus[start]), float(taus[i - 1])))
            start = None
    if start is not None:
        regions.append((float(taus[start]), float(taus[-1])))
    return regions


def existence_threshold(
    kind: QuantKind, mu_grid: Sequence[float], tau_grid: Sequence[float]
) -> Optional[float]:
    """
    Smallest mu on `mu_grid` (sigma^2 = 1 - mu^2) with a positive condition
    somewhere on `tau_grid`, or None if there is none.
    """
    taus = np.asarray(tau_grid, dtype=np.float64)
    for mu in sorted(float(m) for m in mu_grid):
        model = ClassPairModel.standardized(mu)
        if np.any(np.asarray(condition(model, kind, taus)) > 0.0):
            return mu
    return None
