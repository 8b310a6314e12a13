"""Synthetic dataset generators for demos, fixtures, and benchmarks."""

from __future__ import annotations

import numpy as np

from .dataset import Dataset


def planted_dataset(
    n_samples: int = 200,
    n_features: int = 20,
    n_informative: int = 3,
    class_sep: float = 2.0,
    seed: int = 0,
) -> tuple[Dataset, tuple[int, ...]]:
    """Two-class data where only a planted subset of features carries signal.

    Informative columns are shifted by class_sep for class 1; every other
    column is standard normal noise for both classes. Returns the dataset
    and the sorted informative column indices.
    """
    if n_samples < 4:
        raise ValueError(f"n_samples must be >= 4, got {n_samples}")
    if not 1 <= n_informative <= n_features:
        raise ValueError(
            f"n_informative must be in [1, {n_features}], got {n_informative}"
        )
    if class_sep <= 0.0:
        raise ValueError(f"class_sep must be > 0, got {class_sep}")
    rng = np.random.default_rng(seed)
    informative = np.sort(rng.permutation(n_features)[:n_informative])
    labels = np.arange(n_samples) % 2
    features = rng.standard_normal((n_samples, n_features))
    features[np.ix_(labels == 1, informative)] += class_sep
    names = tuple(f"f{j}" for j in range(n_features))
    d = Dataset(features, labels.astype(np.int64), names, ("neg", "pos"))
    return d, tuple(int(j) for j in informative)


def blob_dataset(
    n_per_class: int = 20,
    n_features: int = 4,
    n_classes: int = 2,
    center_scale: float = 6.0,
    noise: float = 0.5,
    seed: int = 0,
) -> Dataset:
    """Well-separated Gaussian blobs, one per class; trivially classifiable."""
    if n_per_class < 2:
        raise ValueError(f"n_per_class must be >= 2, got {n_per_class}")
    if n_classes < 2:
        raise ValueError(f"n_classes must be >= 2, got {n_classes}")
    if noise < 0.0:
        raise ValueError(f"noise must be >= 0, got {noise}")
    rng = np.random.default_rng(seed)
    rows = []
    labels = []
    for c in range(n_classes):
        center = np.full(n_features, c * center_scale)
        rows.append(center + noise * rng.standard_normal((n_per_class, n_features)))
        labels.extend([c] * n_per_class)
    features = np.vstack(rows)
    names = tuple(f"f{j}" for j in range(n_features))
    class_names = tuple(f"c{c}" for c in range(n_classes))
    return Dataset(features, np.array(labels, dtype=np.int64), names, class_names)
