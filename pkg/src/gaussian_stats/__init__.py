"""
Gaussian statistics package.

Standard normal primitives, the standardized two-class model, and dataset
standardization.
"""

from .normal import std_normal_cdf, std_normal_pdf
from .standardize import (
    ClassPairModel,
    RawClassParams,
    fit_dimension_models,
    standardize_dataset,
    standardize_features,
    standardize_params,
)

__all__ = [
    "std_normal_cdf",
    "std_normal_pdf",
    "ClassPairModel",
    "RawClassParams",
    "fit_dimension_models",
    "standardize_dataset",
    "standardize_features",
    "standardize_params",
]
