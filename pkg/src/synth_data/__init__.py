"""
Synthetic data package.

Seeded two-class (and desk-scale multiclass) Gaussian datasets following the
exponentially decaying mean model, plus the LabeledDataset container.
"""

from .dataset import LabeledDataset
from .generator import SynthSpec, generate, generate_multiclass, split, substream_seed

__all__ = [
    "LabeledDataset",
    "SynthSpec",
    "generate",
    "generate_multiclass",
    "split",
    "substream_seed",
]
