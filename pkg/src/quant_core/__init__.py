"""
Quantization core package.

Threshold quantizers and quantization-error metrics.
"""

from .quantizer import (
    QuantKind,
    QuantScheme,
    optimal_scale,
    quantization_error,
    quantize_scalar,
    quantize_vector,
)

__all__ = [
    "QuantKind",
    "QuantScheme",
    "optimal_scale",
    "quantization_error",
    "quantize_scalar",
    "quantize_vector",
]
