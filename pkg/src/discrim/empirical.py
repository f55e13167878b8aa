"""
Sample-based discrimination estimates.

The expected squared distances in the discrimination ratio are estimated
from samples. The default splits each class into disjoint halves and
averages over non-overlapping pairs; the full order-2 U-statistic over all
pairs (closed form in means and variances, O(N)) is available as ALL.
"""

import logging
import math
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import DegenerateClassesError, DomainError, SaturationError
from ..quant_core.quantizer import QuantScheme, quantize_vector
from ..synth_data.dataset import LabeledDataset


logger = logging.getLogger(__name__)


class Pairing(str, Enum):
    """How i.i.d. sample pairs are formed."""

    ALL = "all"
    DISJOINT = "disjoint"


def _prepare(samples, scheme: Optional[QuantScheme], name: str) -> np.ndarray:
    values = np.asarray(samples, dtype=np.float64).ravel()
    if values.size < 2:
        raise DomainError(f"{name} needs at least 2 samples, got {values.size}")
    if scheme is not None:
        values = quantize_vector(values, scheme).astype(np.float64)
    elif not np.all(np.isfinite(values)):
        raise DomainError(f"{name} must be finite")
    return values


def _all_pair_moments(x: np.ndarray, y: np.ndarray):
    inter = np.mean(x * x) - 2.0 * np.mean(x) * np.mean(y) + np.mean(y * y)
    intra = 2.0 * np.var(x, ddof=1) + 2.0 * np.var(y, ddof=1)
    return float(inter), float(intra)


def _disjoint_moments(x: np.ndarray, y: np.ndarray):
    hx, hy = x.size // 2, y.size // 2
    intra_x = np.mean((x[:hx] - x[hx:2 * hx]) ** 2)
    intra_y = np.mean((y[:hy] - y[hy:2 * hy]) ** 2)
    m = min(x.size, y.size)
    inter = np.mean((x[:m] - y[:m]) ** 2)
    return float(inter), float(intra_x + intra_y)


def empirical_discrimination(
    samples_x,
    samples_y,
    scheme: Optional[QuantScheme] = None,
    pairing: Pairing = Pairing.DISJOINT,
) -> float:
    """
    Estimate E[(X1 - Y1)^2] / (E[(X1 - X2)^2] + E[(Y1 - Y2)^2]) from samples.

    Args:
        samples_x: Samples of the first class
        samples_y: Samples of the second class
        scheme: Quantize both sample sets with this scheme first
        pairing: DISJOINT for non-overlapping pairs, ALL for the full U-statistic

    Returns:
        The estimate, or math.inf when the intra-class term is zero

    Raises:
        DomainError: If either class has fewer than 2 samples
        SaturationError: If both terms are zero (every sample identical)
    """
    x = _prepare(samples_x, scheme, "samples_x")
    y = _prepare(samples_y, scheme, "samples_y")
    if Pairing(pairing) is Pairing.ALL:
        inter, intra = _all_pair_moments(x, y)
    else:
        inter, intra = _disjoint_moments(x, y)

    # Rounding can push the all-pairs inter term a hair below zero
    inter = max(inter, 0.0)
    if intra <= 0.0:
        if inter <= 0.0:
            raise SaturationError("all samples are identical; discrimination is undefined")
        return math.inf
    return inter / intra


def dataset_discrimination(
    data: LabeledDataset,
    scheme: Optional[QuantScheme] = None,
    pairing: Pairing = Pairing.DISJOINT,
) -> float:
    """
    Mean per-dimension empirical discrimination of a two-class dataset.

    Dimensions where the estimate is infinite or undefined are left out.

    Raises:
        DegenerateClassesError: If the dataset does not hold exactly two classes
            or no dimension gives a finite estimate
    """
    classes = data.classes
    if classes.size != 2:
        raise DegenerateClassesError(f"expected exactly two classes, got {classes.size}")
    first = data.class_features(int(classes[0]))
    second = data.class_features(int(classes[1]))

    values = []
    for dim in range(data.n_dims):
        try:
            value = empirical_discrimination(first[:, dim], second[:, dim], scheme, pairing)
        except SaturationError:
            continue
        if math.isfinite(value):
            values.append(value)

    if not values:
        raise DegenerateClassesError("no dimension yields a finite discrimination estimate")
    if len(values) < data.n_dims:
        logger.debug("Discrimination averaged over %d of %d dimensions", len(values), data.n_dims)
    return float(np.mean(values))
