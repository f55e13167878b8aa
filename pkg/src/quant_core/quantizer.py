"""
Element-wise binary and ternary threshold quantization.

Binary:  f_b(x; tau) = 1 if x > tau else 0,                 tau in (-inf, +inf)
Ternary: f_t(x; tau) = 1 if x > tau, -1 if x < -tau, else 0, tau in [0, +inf)

Boundary values (x == tau, x == -tau) fall in the "otherwise" branch.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import DomainError


class QuantKind(str, Enum):
    """Quantization family."""

    BINARY = "binary"
    TERNARY = "ternary"


@dataclass(frozen=True)
class QuantScheme:
    """
    A quantization family plus its threshold.

    Attributes:
        kind: Binary or ternary
        tau: Threshold; any non-NaN value for binary, >= 0 for ternary
    """

    kind: QuantKind
    tau: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", QuantKind(self.kind))
        object.__setattr__(self, "tau", float(self.tau))
        if math.isnan(self.tau):
            raise DomainError("quantization threshold must not be NaN")
        if self.kind is QuantKind.TERNARY and self.tau < 0.0:
            raise DomainError(f"ternary quantization requires tau >= 0, got {self.tau}")

    @classmethod
    def binary(cls, tau: float) -> "QuantScheme":
        return cls(QuantKind.BINARY, tau)

    @classmethod
    def ternary(cls, tau: float) -> "QuantScheme":
        return cls(QuantKind.TERNARY, tau)

    @property
    def levels(self) -> tuple:
        return (0, 1) if self.kind is QuantKind.BINARY else (-1, 0, 1)


def quantize_vector(v, scheme: QuantScheme) -> np.ndarray:
    """
    Quantize every element of `v` (any shape) with `scheme`.

    Returns:
        int8 array of the same shape with values in scheme.levels

    Raises:
        DomainError: If `v` holds non-finite values
    """
    values = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise DomainError("quantization input must be finite")
    tau = scheme.tau
    if scheme.kind is QuantKind.BINARY:
        return (values > tau).astype(np.int8)
    return (values > tau).astype(np.int8) - (values < -tau).astype(np.int8)


def quantize_scalar(x: float, scheme: QuantScheme) -> int:
    """Quantize a single finite value."""
    return int(quantize_vector(np.asarray(x), scheme))


def optimal_scale(v: np.ndarray, q: np.ndarray) -> float:
    """Least-squares scale s >= 0 minimizing ||v - s q||^2; 0 when q is all zeros."""
    qq = float(np.dot(q, q))
    if qq == 0.0:
        return 0.0
    return max(float(np.dot(v, q)) / qq, 0.0)


def quantization_error(v, scheme: QuantScheme, scaled: bool = False) -> float:
    """
    Mean squared reconstruction error of quantizing `v`.

    Args:
        v: Values (flattened if multi-dimensional)
        scheme: Quantization scheme
        scaled: Reconstruct with the optimal non-negative scale s instead of s = 1

    Returns:
        mean((v - s q)^2)

    Raises:
        DomainError: If `v` is empty or non-finite
    """
    values = np.asarray(v, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("quantization error needs at least one value")
    q = quantize_vector(values, scheme).astype(np.float64)
    scale = optimal_scale(values, q) if scaled else 1.0
    residual = values - scale * q
    return float(np.mean(residual * residual))
