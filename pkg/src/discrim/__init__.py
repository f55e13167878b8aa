"""
Discrimination package.

Closed-form discrimination of original and quantized Gaussian classes, the
enhancement conditions, and sample-based estimates.
"""

from .closed_form import (
    DiscriminationReport,
    binary_condition,
    condition,
    condition_region,
    d_binary,
    d_original,
    d_quantized,
    d_ternary,
    evaluate,
    existence_threshold,
    ternary_condition,
)
from .empirical import Pairing, dataset_discrimination, empirical_discrimination

__all__ = [
    "DiscriminationReport",
    "binary_condition",
    "condition",
    "condition_region",
    "d_binary",
    "d_original",
    "d_quantized",
    "d_ternary",
    "evaluate",
    "existence_threshold",
    "ternary_condition",
    "Pairing",
    "dataset_discrimination",
    "empirical_discrimination",
]
