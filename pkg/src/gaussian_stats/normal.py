"""
Standard normal distribution primitives.

Phi is scipy.special.ndtr (full double precision in both tails); phi is
the closed-form density. Both reject non-finite input.
"""

import math
from typing import Union

import numpy as np
from scipy import special

from ..errors import DomainError


ArrayLike = Union[float, np.ndarray]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _checked(x: ArrayLike) -> np.ndarray:
    values = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise DomainError("standard normal functions require finite input")
    return values


def _unwrap(values: np.ndarray) -> ArrayLike:
    return float(values) if values.ndim == 0 else values


def std_normal_cdf(x: ArrayLike) -> ArrayLike:
    """
    Cumulative distribution function Phi of N(0, 1).

    Args:
        x: Finite scalar or array

    Returns:
        Phi(x), same shape as x

    Raises:
        DomainError: If any input is NaN or infinite
    """
    return _unwrap(special.ndtr(_checked(x)))


def std_normal_pdf(x: ArrayLike) -> ArrayLike:
    """Density phi(x) = exp(-x^2 / 2) / sqrt(2 pi) of N(0, 1)."""
    values = _checked(x)
    return _unwrap(_INV_SQRT_2PI * np.exp(-0.5 * values * values))
