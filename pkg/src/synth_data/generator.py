"""
Synthetic two-class Gaussian data with exponentially decaying means.

Class 0 draws dimension i from N(mu_i, 1 - mu_i^2), class 1 from
N(-mu_i, 1 - mu_i^2), with mu_i = mu1 * exp(-lambda * (i - 1)). Every
dimension therefore already satisfies mu_i^2 + sigma_i^2 = 1.

Randomness comes from numpy SeedSequence substreams keyed by
(seed, purpose, index), so generating dimensions in parallel or in any
order yields the same dataset.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Optional, Tuple

import numpy as np

from ..errors import DomainError
from .dataset import LabeledDataset


logger = logging.getLogger(__name__)

# Substream purposes
_DIMENSION_STREAM = 0
_SIGN_STREAM = 1
_SPLIT_STREAM = 2


def substream_seed(seed: int, *key: int) -> int:
    """Derive an independent 64-bit seed for the unit identified by `key`."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


@dataclass(frozen=True)
class SynthSpec:
    """
    Parameters of the synthetic data model.

    Attributes:
        dims: Number of feature dimensions n
        lam: Decay rate lambda, |mu_{i+1}| / |mu_i| = exp(-lambda)
        mu1: First-dimension mean magnitude
        samples_per_class: Rows generated per class
        seed: Non-negative 64-bit seed
        random_signs: Draw a random sign per dimension for the class-0 mean
    """

    dims: int = 1
    lam: float = 1.0
    mu1: float = 0.8
    samples_per_class: int = 1000
    seed: int = 0
    random_signs: bool = False

    def __post_init__(self) -> None:
        if int(self.dims) < 1:
            raise DomainError(f"dims must be >= 1, got {self.dims}")
        if not np.isfinite(self.lam) or self.lam < 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam}")
        if not 0.0 < self.mu1 < 1.0:
            raise DomainError(f"mu1 must lie in (0, 1), got {self.mu1}")
        if int(self.samples_per_class) < 1:
            raise DomainError(f"samples_per_class must be >= 1, got {self.samples_per_class}")
        if int(self.seed) < 0 or int(self.seed) >= 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def from_config(cls, config: Any, **overrides: Any) -> "SynthSpec":
        """Build a spec from the `synthetic` config section, then apply overrides."""
        values = {
            "dims": int(config.get("synthetic", "dims", 1)),
            "lam": float(config.get("synthetic", "lambda", 1.0)),
            "mu1": float(config.get("synthetic", "mu1", 0.8)),
            "samples_per_class": int(config.get("synthetic", "samples_per_class", 1000)),
            "seed": int(config.get("harness", "seed", 0)),
            "random_signs": bool(config.get("synthetic", "random_signs", False)),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_seed(self, seed: int) -> "SynthSpec":
        return replace(self, seed=seed)

    def means(self) -> np.ndarray:
        """Per-dimension class-0 means mu_i (class 1 uses -mu_i)."""
        magnitudes = self.mu1 * np.exp(-self.lam * np.arange(self.dims))
        if not self.random_signs:
            return magnitudes
        signs = _substream(self.seed, _SIGN_STREAM).choice([-1.0, 1.0], size=self.dims)
        return magnitudes * signs

    def sigmas(self) -> np.ndarray:
        return np.sqrt(1.0 - self.means() ** 2)


def _generate_columns(spec: SynthSpec, means: np.ndarray, dims: range) -> np.ndarray:
    n = spec.samples_per_class
    block = np.empty((2 * n, len(dims)))
    for col, i in enumerate(dims):
        z = _substream(spec.seed, _DIMENSION_STREAM, i).standard_normal(2 * n)
        mu = means[i]
        sigma = np.sqrt(1.0 - mu * mu)
        block[:n, col] = mu + sigma * z[:n]
        block[n:, col] = -mu + sigma * z[n:]
    return block


def generate(spec: SynthSpec, workers: int = 1) -> LabeledDataset:
    """
    Generate a two-class dataset: the first samples_per_class rows are class 0.

    Args:
        spec: Data model parameters
        workers: Threads used to fill dimension blocks; output does not depend on it

    Returns:
        LabeledDataset with labels 0 and 1
    """
    means = spec.means()
    n = spec.samples_per_class
    if workers <= 1 or spec.dims == 1:
        features = _generate_columns(spec, means, range(spec.dims))
    else:
        edges = np.linspace(0, spec.dims, min(workers, spec.dims) + 1).astype(int)
        blocks = [range(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda dims: _generate_columns(spec, means, dims), blocks))
        features = np.hstack(parts)

    labels = np.repeat(np.array([0, 1], dtype=np.int64), n)
    logger.debug("Generated synthetic dataset: %d x %d (seed=%d)", 2 * n, spec.dims, spec.seed)
    return LabeledDataset(features, labels)


def generate_multiclass(spec: SynthSpec, n_classes: int) -> LabeledDataset:
    """
    Multiclass variant: class c draws dimension i from N(s_ci * mu_i, 1 - mu_i^2).

    The sign pattern s_c is seeded; classes 0 and 1 use opposite signs so the
    two-class model is the special case n_classes == 2.
    """
    if n_classes < 2:
        raise DomainError(f"n_classes must be >= 2, got {n_classes}")
    if n_classes == 2:
        return generate(spec)

    magnitudes = np.abs(spec.means())
    signs = _substream(spec.seed, _SIGN_STREAM, n_classes).choice(
        [-1.0, 1.0], size=(n_classes, spec.dims)
    )
    signs[0] = 1.0
    signs[1] = -1.0

    n = spec.samples_per_class
    sigmas = np.sqrt(1.0 - magnitudes ** 2)
    features = np.empty((n_classes * n, spec.dims))
    for c in range(n_classes):
        z = _substream(spec.seed, _DIMENSION_STREAM, n_classes, c).standard_normal((n, spec.dims))
        features[c * n:(c + 1) * n] = signs[c] * magnitudes + sigmas * z
    labels = np.repeat(np.arange(n_classes, dtype=np.int64), n)
    return LabeledDataset(features, labels)


def split(
    data: LabeledDataset, train_fraction: float, seed: Optional[int] = 0
) -> Tuple[LabeledDataset, LabeledDataset]:
    """
    Stratified train/test split.

    Each class contributes round-half-up(count * train_fraction) rows to the
    training part. Row order within both parts is a seeded permutation, so
    index-based tie-breaking downstream carries no class bias.

    Raises:
        DomainError: If train_fraction is outside (0, 1) or a class has < 2 rows
    """
    if not 0.0 < train_fraction < 1.0:
        raise DomainError(f"train_fraction must lie in (0, 1), got {train_fraction}")

    rng = _substream(int(seed or 0), _SPLIT_STREAM)
    train_idx, test_idx = [], []
    for label in data.classes:
        idx = np.flatnonzero(data.labels == label)
        if idx.size < 2:
            raise DomainError(f"class {label} has {idx.size} sample(s); at least 2 are required")
        idx = rng.permutation(idx)
        n_train = int(np.floor(idx.size * train_fraction + 0.5))
        n_train = min(max(n_train, 1), idx.size - 1)
        train_idx.append(idx[:n_train])
        test_idx.append(idx[n_train:])

    train_order = rng.permutation(np.concatenate(train_idx))
    test_order = rng.permutation(np.concatenate(test_idx))
    return data.subset(train_order), data.subset(test_order)
