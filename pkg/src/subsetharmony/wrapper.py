"""Wrapper objective: cross-validated classifier accuracy of a feature subset.

Every candidate subset is scored by stratified k-fold cross validation on
the projected columns, with standardization fitted per training fold. The
reported accuracy is micro-averaged: pooled correct count over pooled
sample count across folds. Evaluations are memoized under the canonical
(sorted) subset key, since the same feature set reappears constantly
during a search.
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .classifiers import KnnConfig, MlpConfig, knn_predict, mlp_predict, mlp_train
from .dataset import Dataset, project, standardize, stratified_kfold, take_rows
from .subsets import FeatureSubset


def accuracy(correct: int, total: int) -> float:
    """Classification accuracy percent: 100 * correct / total."""
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    if not 0 <= correct <= total:
        raise ValueError(f"correct={correct} outside [0, {total}]")
    return 100.0 * correct / total


def confidence_interval(p_hat: float, n: int, level: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Well behaved at extreme accuracies: contains p_hat and stays in [0, 1].
    """
    if not 0.0 <= p_hat <= 1.0:
        raise ValueError(f"p_hat must be in [0,1], got {p_hat}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0,1), got {level}")
    z = NormalDist().inv_cdf((1.0 + level) / 2.0)
    denom = 1.0 + z * z / n
    center = (p_hat + z * z / (2 * n)) / denom
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class EvaluationResult:
    """Cross-validated score of one feature subset."""

    accuracy_percent: float
    per_fold_accuracy: tuple[float, ...]
    correct_count: int
    total_count: int
    elapsed_seconds: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.accuracy_percent <= 100.0:
            raise ValueError(f"accuracy {self.accuracy_percent} outside [0,100]")
        if not 0 <= self.correct_count <= self.total_count:
            raise ValueError("correct_count outside [0, total_count]")
        if self.elapsed_seconds < 0.0:
            raise ValueError("elapsed_seconds must be non-negative")
        object.__setattr__(self, "per_fold_accuracy", tuple(self.per_fold_accuracy))


class SubsetCache:
    """Thread-safe map from canonical subset key to EvaluationResult.

    Identical keys always map to identical results (the objective is
    deterministic), so concurrent last-writer-wins races are benign.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._entries: dict[tuple[int, ...], EvaluationResult] = {}

    def get(self, key: tuple[int, ...]) -> EvaluationResult | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: tuple[int, ...], result: EvaluationResult) -> None:
        with self._lock:
            self._entries[key] = result

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def __contains__(self, key: tuple[int, ...]) -> bool:
        with self._lock:
            return key in self._entries


@dataclass(frozen=True)
class ObjectiveConfig:
    """Which classifier scores a subset, and how the folds are built.

    fold_average=False pools correct counts over all folds (micro average);
    True averages the per-fold accuracies instead, for comparison.
    """

    classifier: str = "mlp"
    mlp: MlpConfig = field(default_factory=MlpConfig)
    knn: KnnConfig = field(default_factory=KnnConfig)
    folds: int = 3
    fold_seed: int = 0
    standardize: bool = True
    fold_average: bool = False

    def __post_init__(self) -> None:
        if self.classifier not in ("mlp", "knn"):
            raise ValueError(f"classifier must be 'mlp' or 'knn', got {self.classifier!r}")
        if self.folds < 2:
            raise ValueError(f"folds must be >= 2, got {self.folds}")


def fit_predict(train: Dataset, test: Dataset, cfg: ObjectiveConfig) -> np.ndarray:
    """Train the configured classifier and predict the test labels."""
    if cfg.classifier == "mlp":
        model = mlp_train(train, cfg.mlp)
        return mlp_predict(model, test)
    return knn_predict(train, cfg.knn, test)


def evaluate_subset(
    d: Dataset,
    s: FeatureSubset,
    cfg: ObjectiveConfig,
    cache: SubsetCache | None = None,
) -> EvaluationResult:
    """Stratified k-fold CV accuracy of the classifier on project(d, s).

    The fold assignment depends only on the labels and cfg.fold_seed, so
    every subset is scored against the same folds. Cached results are
    returned verbatim on re-query of the same feature set in any order.
    """
    key = s.key
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    start = time.perf_counter()
    sub = project(d, s)
    folds = stratified_kfold(sub, cfg.folds, cfg.fold_seed)
    correct = 0
    total = 0
    per_fold: list[float] = []
    for f in range(cfg.folds):
        train = take_rows(sub, folds.train_indices(f))
        test = take_rows(sub, folds.test_indices(f))
        if cfg.standardize:
            train, test = standardize(train, test)
        predicted = fit_predict(train, test, cfg)
        fold_correct = int((predicted == test.labels).sum())
        per_fold.append(accuracy(fold_correct, test.n_samples))
        correct += fold_correct
        total += test.n_samples
    if cfg.fold_average:
        overall = float(np.mean(per_fold))
    else:
        overall = accuracy(correct, total)
    result = EvaluationResult(
        accuracy_percent=overall,
        per_fold_accuracy=tuple(per_fold),
        correct_count=correct,
        total_count=total,
        elapsed_seconds=time.perf_counter() - start,
    )
    if cache is not None:
        cache.put(key, result)
    return result


class SubsetObjective:
    """Callable objective f(subset) -> accuracy percent, with memoization.

    The callable form is what the optimizers consume; `evaluate` exposes the
    full per-fold result. `calls` counts objective invocations including
    cache hits; `unique_evaluations` counts actual CV runs.
    """

    def __init__(self, dataset: Dataset, config: ObjectiveConfig,
                 cache: SubsetCache | None = None) -> None:
        self.dataset = dataset
        self.config = config
        self.cache = cache if cache is not None else SubsetCache()
        self.calls = 0

    def __call__(self, subset: FeatureSubset) -> float:
        return self.evaluate(subset).accuracy_percent

    def evaluate(self, subset: FeatureSubset) -> EvaluationResult:
        self.calls += 1
        return evaluate_subset(self.dataset, subset, self.config, self.cache)

    @property
    def unique_evaluations(self) -> int:
        return len(self.cache)

    def reset_cache(self) -> None:
        self.cache.clear()
        self.calls = 0


def loo_knn_accuracy(d: Dataset, subset: FeatureSubset, k_neighbors: int = 1) -> float:
    """Leave-one-out kNN accuracy percent on the chosen columns.

    Fully deterministic: no folds, no RNG. Tie handling matches knn_predict
    (equidistant neighbors prefer the lower sample index, tied votes the
    lowest class id), so exhaustive-search oracles are exactly repeatable.
    """
    sub = project(d, FeatureSubset(subset.key))
    x = sub.features
    sq = np.einsum("ij,ij->i", x, x)
    dist = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.fill_diagonal(dist, np.inf)
    neighbors = np.argsort(dist, axis=1, kind="stable")[:, :k_neighbors]
    votes = sub.labels[neighbors]
    predicted = np.array(
        [np.argmax(np.bincount(row, minlength=sub.n_classes)) for row in votes]
    )
    return accuracy(int((predicted == sub.labels).sum()), sub.n_samples)


class LeaveOneOutObjective:
    """Deterministic LOO-kNN objective with the SubsetObjective interface."""

    def __init__(self, dataset: Dataset, k_neighbors: int = 1,
                 cache: SubsetCache | None = None) -> None:
        self.dataset = dataset
        self.k_neighbors = k_neighbors
        self.cache = cache if cache is not None else SubsetCache()
        self.calls = 0

    def __call__(self, subset: FeatureSubset) -> float:
        self.calls += 1
        cached = self.cache.get(subset.key)
        if cached is not None:
            return cached.accuracy_percent
        start = time.perf_counter()
        acc = loo_knn_accuracy(self.dataset, subset, self.k_neighbors)
        result = EvaluationResult(
            accuracy_percent=acc,
            per_fold_accuracy=(acc,),
            correct_count=round(acc * self.dataset.n_samples / 100.0),
            total_count=self.dataset.n_samples,
            elapsed_seconds=time.perf_counter() - start,
        )
        self.cache.put(subset.key, result)
        return acc

    @property
    def unique_evaluations(self) -> int:
        return len(self.cache)

    def reset_cache(self) -> None:
        self.cache.clear()
        self.calls = 0
