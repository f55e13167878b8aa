"""
Minimum-quantization-error (MQE) threshold search.

The empirical reconstruction error only changes when tau crosses a sample
value (binary) or a sample magnitude (ternary), so it is piecewise constant
in tau. Sorting once and sweeping the split index with prefix sums gives
the exact minimizer in O(N log N).
"""

import logging
from typing import Tuple

import numpy as np

from ..errors import DomainError
from ..quant_core.quantizer import QuantKind, QuantScheme, quantization_error


logger = logging.getLogger(__name__)


def _split_errors(sorted_values: np.ndarray, scaled: bool) -> np.ndarray:
    """
    Total squared error for every split j = 0..n where rows [0, j) map to 0
    and rows [j, n) map to 1 (values already reflected to magnitudes for
    ternary).
    """
    n = sorted_values.size
    squares = sorted_values * sorted_values
    suffix_sum = np.concatenate((np.cumsum(sorted_values[::-1])[::-1], [0.0]))
    suffix_sq = np.concatenate((np.cumsum(squares[::-1])[::-1], [0.0]))
    total_sq = suffix_sq[0]
    ones = n - np.arange(n + 1, dtype=np.float64)

    if not scaled:
        return total_sq - 2.0 * suffix_sum + ones

    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(ones > 0, np.maximum(suffix_sum / ones, 0.0), 0.0)
    return total_sq - 2.0 * scale * suffix_sum + scale * scale * ones


def _candidate_thresholds(sorted_values: np.ndarray, low: float) -> np.ndarray:
    """tau for each split j: `low` for j = 0, midpoints inside, the maximum for j = n."""
    mids = 0.5 * (sorted_values[:-1] + sorted_values[1:])
    return np.concatenate(([low], mids, [sorted_values[-1]]))


def mqe_search(samples, kind: QuantKind, scaled: bool = False) -> Tuple[float, float]:
    """
    Exact MQE threshold over all error-changing breakpoints.

    Args:
        samples: Values quantized with one shared threshold (flattened)
        kind: Binary or ternary
        scaled: Minimize the optimally scaled reconstruction error

    Returns:
        Tuple of (tau, mean squared error at tau). Among equal errors the
        smallest tau wins.

    Raises:
        DomainError: If fewer than two finite samples are given
    """
    kind = QuantKind(kind)
    values = np.asarray(samples, dtype=np.float64).ravel()
    if values.size < 2:
        raise DomainError(f"MQE search needs at least 2 samples, got {values.size}")
    if not np.all(np.isfinite(values)):
        raise DomainError("MQE samples must be finite")

    if np.all(values == values[0]):
        logger.warning("All %d MQE samples are equal; returning tau = 0", values.size)
        scheme = QuantScheme(kind, 0.0)
        return 0.0, quantization_error(values, scheme, scaled=scaled)

    n = values.size
    if kind is QuantKind.BINARY:
        ordered = np.sort(values)
        errors = _split_errors(ordered, scaled)
        taus = _candidate_thresholds(ordered, ordered[0] - 1.0)
        valid = np.ones(n + 1, dtype=bool)
        valid[1:n] = ordered[:-1] < ordered[1:]
    else:
        ordered = np.sort(np.abs(values))
        errors = _split_errors(ordered, scaled)
        taus = _candidate_thresholds(ordered, 0.0)
        zeros = int(np.count_nonzero(ordered == 0.0))
        valid = np.zeros(n + 1, dtype=bool)
        valid[zeros:] = True
        valid[zeros + 1:n] &= ordered[zeros:n - 1] < ordered[zeros + 1:]
        # Splitting below the zero block is the tau = 0 candidate
        taus[zeros] = 0.0

    masked = np.where(valid, errors, np.inf)
    best = int(np.argmin(masked))
    return float(taus[best]), float(max(masked[best], 0.0) / n)


def solve_mqe_threshold(samples, kind: QuantKind, scaled: bool = False) -> float:
    """Threshold minimizing the (optionally scaled) mean squared quantization error."""
    tau, error = mqe_search(samples, kind, scaled)
    logger.debug("MQE %s threshold %.6g (error %.6g, scaled=%s)", QuantKind(kind).value, tau, error, scaled)
    return tau
