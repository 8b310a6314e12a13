"""Baseline optimizers over the same subset space and objective.

The GA and binary PSO share the harmony-search solution encoding (fixed-k
distinct-index subsets) so fitness values are directly comparable; PCA is
the statistical dimensionality-reduction baseline, scored downstream by
the same cross-validated wrapper on its transformed features.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, standardize, stratified_kfold, take_rows
from .harmony import Harmony, RunHistory
from .subsets import FeatureSubset
from .wrapper import EvaluationResult, ObjectiveConfig, SubsetObjective, accuracy, fit_predict


@dataclass(frozen=True)
class GaConfig:
    """Genetic algorithm parameters (fixed-k subset chromosomes)."""

    n_features: int
    subset_size: int
    population: int = 20
    generations: int = 100
    crossover_rate: float = 1.0
    mutation_rate: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ValueError(f"n_features must be >= 1, got {self.n_features}")
        if not 1 <= self.subset_size <= self.n_features:
            raise ValueError(
                f"subset_size must be in [1, {self.n_features}], got {self.subset_size}"
            )
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0,1], got {rate}")


@dataclass(frozen=True)
class PsoConfig:
    """Binary PSO parameters (sigmoid transfer, repair to exactly k)."""

    n_features: int
    subset_size: int
    particles: int = 20
    iterations: int = 100
    c1: float = 2.0
    c2: float = 2.0
    inertia: float = 0.9
    velocity_clamp: float = 4.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ValueError(f"n_features must be >= 1, got {self.n_features}")
        if not 1 <= self.subset_size <= self.n_features:
            raise ValueError(
                f"subset_size must be in [1, {self.n_features}], got {self.subset_size}"
            )
        if self.particles < 2:
            raise ValueError(f"particles must be >= 2, got {self.particles}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.c1 < 0.0 or self.c2 < 0.0:
            raise ValueError(f"c1 and c2 must be >= 0, got {self.c1}, {self.c2}")
        # zero inertia tolerated so the degenerate no-memory swarm stays testable
        if self.inertia < 0.0:
            raise ValueError(f"inertia must be >= 0, got {self.inertia}")
        if self.velocity_clamp <= 0.0:
            raise ValueError(f"velocity_clamp must be > 0, got {self.velocity_clamp}")


@dataclass(frozen=True)
class PcaConfig:
    """PCA baseline: fixed component count, or None to sweep and keep the best."""

    components: int | None = None

    def __post_init__(self) -> None:
        if self.components is not None and self.components < 1:
            raise ValueError(f"components must be >= 1, got {self.components}")


def _random_subset(rng: np.random.Generator, n_features: int, k: int) -> FeatureSubset:
    return FeatureSubset(tuple(int(i) for i in rng.choice(n_features, size=k, replace=False)))


def _repair_duplicates(genes: list[int], rng: np.random.Generator, n_features: int) -> list[int]:
    """Replace duplicate genes with uniform random unused indices."""
    seen: set[int] = set()
    dup_slots: list[int] = []
    for slot, g in enumerate(genes):
        if g in seen:
            dup_slots.append(slot)
        else:
            seen.add(g)
    if dup_slots:
        unused = [i for i in range(n_features) if i not in seen]
        for slot in dup_slots:
            pick = int(rng.integers(len(unused)))
            genes[slot] = unused.pop(pick)
    return genes


def ga_run(cfg: GaConfig, objective) -> tuple[Harmony, RunHistory]:
    """Generational GA: tournament(2) selection, single-point crossover on
    sorted index lists with duplicate repair, per-gene mutation, elitism 1.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    k, n = cfg.subset_size, cfg.n_features

    population = [_random_subset(rng, n, k) for _ in range(cfg.population)]
    fitnesses = [float(objective(s)) for s in population]
    evaluations = cfg.population

    def tournament() -> FeatureSubset:
        i = int(rng.integers(cfg.population))
        j = int(rng.integers(cfg.population))
        return population[i] if fitnesses[i] >= fitnesses[j] else population[j]

    best_idx = int(np.argmax(fitnesses))
    best = Harmony(population[best_idx], fitnesses[best_idx])
    best_trace: list[float] = []
    worst_trace: list[float] = []
    improved_trace: list[bool] = []

    for _ in range(cfg.generations):
        elite_idx = int(np.argmax(fitnesses))
        elite = population[elite_idx]
        elite_fit = fitnesses[elite_idx]
        children: list[FeatureSubset] = []
        while len(children) < cfg.population - 1:
            p1 = tournament()
            p2 = tournament()
            if k >= 2 and rng.random() < cfg.crossover_rate:
                cut = int(rng.integers(1, k))
                genes = list(sorted(p1.indices)[:cut]) + list(sorted(p2.indices)[cut:])
                genes = _repair_duplicates(genes, rng, n)
            else:
                genes = list(p1.indices)
            for slot in range(k):
                if rng.random() < cfg.mutation_rate:
                    unused = [i for i in range(n) if i not in genes]
                    if unused:
                        genes[slot] = int(unused[rng.integers(len(unused))])
            children.append(FeatureSubset(tuple(genes)))
        child_fits = [float(objective(c)) for c in children]
        evaluations += len(children)
        population = [elite] + children
        fitnesses = [elite_fit] + child_fits

        gen_best_idx = int(np.argmax(fitnesses))
        improved = fitnesses[gen_best_idx] > best.fitness
        if improved:
            best = Harmony(population[gen_best_idx], fitnesses[gen_best_idx])
        best_trace.append(best.fitness)
        worst_trace.append(float(np.min(fitnesses)))
        improved_trace.append(improved)

    history = RunHistory(
        best_fitness=tuple(best_trace),
        worst_fitness=tuple(worst_trace),
        replaced=tuple(improved_trace),
        best=best,
        evaluations=evaluations,
        elapsed_seconds=time.perf_counter() - start,
    )
    return best, history


def _sigmoid(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    ev = np.exp(v[~pos])
    out[~pos] = ev / (1.0 + ev)
    return out


def _repair_to_k(selected: np.ndarray, prob: np.ndarray, k: int) -> np.ndarray:
    """Force a sampled inclusion mask to exactly k ones.

    Surplus drops the lowest-probability selected dims; deficit adds the
    highest-probability unselected dims. Probability ties resolve to the
    lower dimension index.
    """
    n = len(selected)
    mask = selected.copy()
    count = int(mask.sum())
    if count > k:
        dims = np.flatnonzero(mask)
        keep = dims[np.lexsort((dims, -prob[dims]))][:k]
        mask = np.zeros(n, dtype=bool)
        mask[keep] = True
    elif count < k:
        dims = np.flatnonzero(~mask)
        add = dims[np.lexsort((dims, -prob[dims]))][: k - count]
        mask[add] = True
    return mask


def pso_run(cfg: PsoConfig, objective) -> tuple[Harmony, RunHistory]:
    """Binary PSO over inclusion masks, repaired to exactly k features.

    Velocities follow the classic update v <- w*v + c1*r1*(pbest-x) +
    c2*r2*(gbest-x), clamped to +/- velocity_clamp; sigmoid(v) is the
    per-dimension inclusion probability.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    k, n = cfg.subset_size, cfg.n_features

    positions = np.zeros((cfg.particles, n), dtype=bool)
    for p in range(cfg.particles):
        positions[p, rng.choice(n, size=k, replace=False)] = True
    velocities = np.zeros((cfg.particles, n))

    def score(mask: np.ndarray) -> float:
        return float(objective(FeatureSubset(tuple(int(i) for i in np.flatnonzero(mask)))))

    pbest_pos = positions.copy()
    pbest_fit = np.array([score(positions[p]) for p in range(cfg.particles)])
    evaluations = cfg.particles
    g = int(np.argmax(pbest_fit))
    gbest_pos = pbest_pos[g].copy()
    gbest_fit = float(pbest_fit[g])

    best_trace: list[float] = []
    worst_trace: list[float] = []
    improved_trace: list[bool] = []

    for _ in range(cfg.iterations):
        improved = False
        iter_fits = np.empty(cfg.particles)
        for p in range(cfg.particles):
            r1 = rng.random(n)
            r2 = rng.random(n)
            x = positions[p].astype(float)
            velocities[p] = (
                cfg.inertia * velocities[p]
                + cfg.c1 * r1 * (pbest_pos[p].astype(float) - x)
                + cfg.c2 * r2 * (gbest_pos.astype(float) - x)
            )
            np.clip(velocities[p], -cfg.velocity_clamp, cfg.velocity_clamp, out=velocities[p])
            prob = _sigmoid(velocities[p])
            sampled = rng.random(n) < prob
            positions[p] = _repair_to_k(sampled, prob, k)
            fit = score(positions[p])
            evaluations += 1
            iter_fits[p] = fit
            if fit > pbest_fit[p]:
                pbest_fit[p] = fit
                pbest_pos[p] = positions[p].copy()
            if fit > gbest_fit:
                gbest_fit = fit
                gbest_pos = positions[p].copy()
                improved = True
        best_trace.append(gbest_fit)
        worst_trace.append(float(iter_fits.min()))
        improved_trace.append(improved)

    best = Harmony(
        FeatureSubset(tuple(int(i) for i in np.flatnonzero(gbest_pos))), gbest_fit
    )
    history = RunHistory(
        best_fitness=tuple(best_trace),
        worst_fitness=tuple(worst_trace),
        replaced=tuple(improved_trace),
        best=best,
        evaluations=evaluations,
        elapsed_seconds=time.perf_counter() - start,
    )
    return best, history


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Orthonormal principal components with their explained variances."""

    components: np.ndarray   # (n_features, r), orthonormal columns
    eigenvalues: np.ndarray  # (r,), non-negative, non-increasing
    means: np.ndarray        # (n_features,)

    def __post_init__(self) -> None:
        n, r = self.components.shape
        if self.eigenvalues.shape != (r,) or self.means.shape != (n,):
            raise ValueError("inconsistent PCA model shapes")
        gram = self.components.T @ self.components
        if np.abs(gram - np.eye(r)).max() > 1e-8:
            raise ValueError("components must be orthonormal")
        if (self.eigenvalues < 0).any() or (np.diff(self.eigenvalues) > 0).any():
            raise ValueError("eigenvalues must be non-negative and non-increasing")

    @property
    def n_components(self) -> int:
        return self.components.shape[1]


def pca_fit(d: Dataset, r: int) -> PcaModel:
    """Top-r eigenvectors of the mean-centered covariance matrix.

    Sign convention: the largest-magnitude entry of each component is made
    positive, so the decomposition is reproducible.
    """
    if not 1 <= r <= min(d.n_samples, d.n_features):
        raise ValueError(
            f"components must be in [1, {min(d.n_samples, d.n_features)}], got {r}"
        )
    means = d.features.mean(axis=0)
    centered = d.features - means
    cov = np.cov(centered, rowvar=False, ddof=1) if d.n_samples > 1 else np.zeros(
        (d.n_features, d.n_features)
    )
    cov = np.atleast_2d(cov)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    order = np.argsort(eigenvalues)[::-1][:r]
    values = np.clip(eigenvalues[order], 0.0, None)
    vectors = eigenvectors[:, order]
    for j in range(vectors.shape[1]):
        lead = np.argmax(np.abs(vectors[:, j]))
        if vectors[lead, j] < 0:
            vectors[:, j] = -vectors[:, j]
    return PcaModel(components=vectors, eigenvalues=values, means=means)


def pca_transform(model: PcaModel, d: Dataset) -> Dataset:
    """Project a dataset onto the principal components."""
    if d.n_features != model.means.shape[0]:
        raise ValueError(
            f"model expects {model.means.shape[0]} features, got {d.n_features}"
        )
    projected = (d.features - model.means) @ model.components
    names = tuple(f"pc{j + 1}" for j in range(model.n_components))
    return Dataset(projected, d.labels, names, d.class_names)


def evaluate_components(d: Dataset, r: int, cfg: ObjectiveConfig) -> EvaluationResult:
    """Cross-validated accuracy with per-fold PCA to r dimensions.

    Mirrors the subset objective: same stratified folds, standardization
    and PCA both fitted on the training part of each fold only.
    """
    start = time.perf_counter()
    folds = stratified_kfold(d, cfg.folds, cfg.fold_seed)
    correct = 0
    total = 0
    per_fold: list[float] = []
    for f in range(cfg.folds):
        train = take_rows(d, folds.train_indices(f))
        test = take_rows(d, folds.test_indices(f))
        if cfg.standardize:
            train, test = standardize(train, test)
        model = pca_fit(train, r)
        train_r = pca_transform(model, train)
        test_r = pca_transform(model, test)
        predicted = fit_predict(train_r, test_r, cfg)
        fold_correct = int((predicted == test.labels).sum())
        per_fold.append(accuracy(fold_correct, test.n_samples))
        correct += fold_correct
        total += test.n_samples
    if cfg.fold_average:
        overall = float(np.mean(per_fold))
    else:
        overall = accuracy(correct, total)
    return EvaluationResult(
        accuracy_percent=overall,
        per_fold_accuracy=tuple(per_fold),
        correct_count=correct,
        total_count=total,
        elapsed_seconds=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class PcaSweepResult:
    """Best component count found by the PCA baseline."""

    components: int
    accuracy_percent: float
    evaluated: tuple[tuple[int, float], ...]


def pca_run(cfg: PcaConfig, objective: SubsetObjective) -> PcaSweepResult:
    """Score the PCA baseline against the objective's dataset and folds.

    With components=None every feasible dimensionality is tried and the
    best accuracy wins (ties to the smaller count).
    """
    d = objective.dataset
    obj_cfg = objective.config
    folds = stratified_kfold(d, obj_cfg.folds, obj_cfg.fold_seed)
    max_r = min(
        d.n_features,
        min(len(folds.train_indices(f)) for f in range(obj_cfg.folds)),
    )
    if cfg.components is not None:
        if cfg.components > max_r:
            raise ValueError(
                f"components={cfg.components} exceeds feasible maximum {max_r}"
            )
        candidates = [cfg.components]
    else:
        candidates = list(range(1, max_r + 1))
    evaluated = []
    for r in candidates:
        result = evaluate_components(d, r, obj_cfg)
        evaluated.append((r, result.accuracy_percent))
    best_r, best_acc = max(evaluated, key=lambda pair: (pair[1], -pair[0]))
    return PcaSweepResult(
        components=best_r,
        accuracy_percent=best_acc,
        evaluated=tuple(evaluated),
    )
