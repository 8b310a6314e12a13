"""Discrete harmony search over fixed-size feature subsets.

A solution ("harmony") assigns one distinct feature index to each of k
slots ("musicians"). New candidates are improvised slot by slot: with
probability HMCR the slot copies a value stored at the same slot across
the harmony memory, optionally nudged to a neighbouring feature index
with probability PAR; otherwise the slot draws a fresh random feature.
Already-chosen values are excluded throughout, so every improvisation is
a valid distinct-index subset. A candidate replaces the worst memory
entry only on strict fitness improvement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .subsets import FeatureSubset

PITCH_TOPOLOGIES = ("index", "column")


@dataclass(frozen=True)
class Harmony:
    """An evaluated subset: the encoding plus its accuracy-percent fitness."""

    subset: FeatureSubset
    fitness: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.fitness <= 100.0:
            raise ValueError(f"fitness {self.fitness} outside [0,100]")


@dataclass(frozen=True)
class HsConfig:
    """Harmony search parameters.

    hmcr is the probability a slot draws from the memory, par the
    probability a memory draw is pitch-adjusted, bandwidth the scale of
    that adjustment. pitch_topology selects what "neighbouring value"
    means: "index" walks the numeric feature-index line (the default);
    "column" walks the sorted values currently stored in the slot's memory
    column. Both readings of the neighbourhood are defensible for discrete
    feature indices, so the variant ships behind this switch.
    """

    n_features: int
    subset_size: int
    hms: int = 20
    hmcr: float = 0.7
    par: float = 0.3
    bandwidth: float = 1.0
    max_iterations: int = 100
    seed: int = 0
    pitch_topology: str = "index"

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ValueError(f"n_features must be >= 1, got {self.n_features}")
        if not 1 <= self.subset_size <= self.n_features:
            raise ValueError(
                f"subset_size must be in [1, {self.n_features}], got {self.subset_size}"
            )
        if self.hms < 1:
            raise ValueError(f"hms must be >= 1, got {self.hms}")
        if not 0.0 <= self.hmcr <= 1.0:
            raise ValueError(f"hmcr must be in [0,1], got {self.hmcr}")
        if not 0.0 <= self.par <= 1.0:
            raise ValueError(f"par must be in [0,1], got {self.par}")
        if self.bandwidth <= 0.0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.pitch_topology not in PITCH_TOPOLOGIES:
            raise ValueError(
                f"pitch_topology must be one of {PITCH_TOPOLOGIES}, got {self.pitch_topology!r}"
            )


class HarmonyMemory:
    """Fixed-capacity pool of evaluated harmonies."""

    def __init__(self, harmonies: list[Harmony]) -> None:
        if not harmonies:
            raise ValueError("harmony memory must not be empty")
        k = harmonies[0].subset.k
        if any(h.subset.k != k for h in harmonies):
            raise ValueError("all harmonies must share one subset size")
        self._harmonies = list(harmonies)

    @property
    def harmonies(self) -> tuple[Harmony, ...]:
        return tuple(self._harmonies)

    @property
    def size(self) -> int:
        return len(self._harmonies)

    @property
    def subset_size(self) -> int:
        return self._harmonies[0].subset.k

    def column(self, slot: int) -> list[int]:
        """Values stored at one slot across all memory rows (with repeats)."""
        return [h.subset.indices[slot] for h in self._harmonies]

    def column_union(self) -> set[int]:
        return {i for h in self._harmonies for i in h.subset.indices}

    def best(self) -> Harmony:
        return max(self._harmonies, key=lambda h: h.fitness)

    def worst_index(self) -> int:
        fitnesses = [h.fitness for h in self._harmonies]
        return int(np.argmin(fitnesses))

    def worst(self) -> Harmony:
        return self._harmonies[self.worst_index()]

    def replace(self, index: int, harmony: Harmony) -> None:
        self._harmonies[index] = harmony


@dataclass(frozen=True)
class RunHistory:
    """Per-iteration trace of one optimizer run."""

    best_fitness: tuple[float, ...]
    worst_fitness: tuple[float, ...]
    replaced: tuple[bool, ...]
    best: Harmony
    evaluations: int
    elapsed_seconds: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "best_fitness", tuple(self.best_fitness))
        object.__setattr__(self, "worst_fitness", tuple(self.worst_fitness))
        object.__setattr__(self, "replaced", tuple(self.replaced))
        seq = self.best_fitness
        if any(later < earlier for earlier, later in zip(seq, seq[1:])):
            raise ValueError("best-fitness sequence must be non-decreasing")


def pitch_adjust(
    value: int,
    band: float,
    eps: float,
    forbidden: set[int],
    n_features: int,
) -> int:
    """Move a feature index to a nearby free one on the index line.

    The raw step is round(band * eps); a step that rounds to zero becomes a
    unit step in eps's direction, so left and right moves are equally
    likely under symmetric eps. The candidate is clamped to the valid
    range, and collisions with `forbidden` (or with the original value)
    probe outward alternately (+1, -1, +2, -2, ...) until a free index is
    found. If no index is free the value is returned unchanged.
    """
    if not -1.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [-1,1], got {eps}")
    step = int(np.rint(band * eps))
    if step == 0 and eps != 0.0:
        step = 1 if eps > 0 else -1
    candidate = min(max(value + step, 0), n_features - 1)

    def free(i: int) -> bool:
        return 0 <= i < n_features and i != value and i not in forbidden

    if free(candidate):
        return candidate
    for delta in range(1, n_features + 1):
        if free(candidate + delta):
            return candidate + delta
        if free(candidate - delta):
            return candidate - delta
    return value


def _pitch_adjust_column(
    value: int,
    band: float,
    eps: float,
    forbidden: set[int],
    domain: list[int],
) -> int:
    """Pitch adjustment along the sorted values of one memory column."""
    ordered = sorted(set(domain))
    pos = ordered.index(value)
    step = int(np.rint(band * eps))
    if step == 0 and eps != 0.0:
        step = 1 if eps > 0 else -1
    cand = min(max(pos + step, 0), len(ordered) - 1)

    def free(p: int) -> bool:
        return 0 <= p < len(ordered) and ordered[p] != value and ordered[p] not in forbidden

    if free(cand):
        return ordered[cand]
    for delta in range(1, len(ordered) + 1):
        if free(cand + delta):
            return ordered[cand + delta]
        if free(cand - delta):
            return ordered[cand - delta]
    return value


def improvise(memory: HarmonyMemory, cfg: HsConfig, rng: np.random.Generator) -> FeatureSubset:
    """Construct one new candidate subset, slot by slot.

    Each slot draws from its own memory column (values already chosen at
    earlier slots are inadmissible) with probability hmcr, else uniformly
    from all unchosen features. Memory draws are pitch-adjusted with
    probability par. An exhausted column (every stored value already
    chosen) falls back to a random unchosen feature, preferring features
    that appear somewhere in the memory so that pure memory consideration
    never invents indices the memory cannot justify.
    """
    chosen: list[int] = []
    chosen_set: set[int] = set()
    for slot in range(cfg.subset_size):
        m1 = rng.random()
        value: int | None = None
        if m1 < cfg.hmcr:
            column = memory.column(slot)
            admissible = [v for v in column if v not in chosen_set]
            if admissible:
                value = int(admissible[rng.integers(len(admissible))])
                m2 = rng.random()
                if m2 < cfg.par:
                    eps = float(rng.uniform(-1.0, 1.0))
                    if cfg.pitch_topology == "index":
                        value = pitch_adjust(value, cfg.bandwidth, eps, chosen_set, cfg.n_features)
                    else:
                        value = _pitch_adjust_column(value, cfg.bandwidth, eps, chosen_set, column)
            else:
                pool = sorted(memory.column_union() - chosen_set)
                if not pool:
                    pool = [i for i in range(cfg.n_features) if i not in chosen_set]
                value = int(pool[rng.integers(len(pool))])
        else:
            pool = [i for i in range(cfg.n_features) if i not in chosen_set]
            value = int(pool[rng.integers(len(pool))])
        chosen.append(value)
        chosen_set.add(value)
    return FeatureSubset(tuple(chosen))


def random_subset(n_features: int, k: int, rng: np.random.Generator) -> FeatureSubset:
    """Uniformly random distinct-index subset of size k."""
    indices = rng.choice(n_features, size=k, replace=False)
    return FeatureSubset(tuple(int(i) for i in indices))


def initialize_memory(cfg: HsConfig, objective, rng: np.random.Generator | None = None) -> HarmonyMemory:
    """Fill the memory with hms random evaluated subsets.

    Whole-subset duplicates across rows are allowed; the evaluation cache
    makes re-scoring them free.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    harmonies = []
    for _ in range(cfg.hms):
        subset = random_subset(cfg.n_features, cfg.subset_size, rng)
        harmonies.append(Harmony(subset, float(objective(subset))))
    return HarmonyMemory(harmonies)


def replace_worst(memory: HarmonyMemory, candidate: Harmony) -> bool:
    """Replace the worst memory entry iff the candidate strictly beats it."""
    worst_idx = memory.worst_index()
    if candidate.fitness > memory.harmonies[worst_idx].fitness:
        memory.replace(worst_idx, candidate)
        return True
    return False


def hs_run(cfg: HsConfig, objective) -> tuple[Harmony, RunHistory]:
    """Full harmony search: initialize, improvise/evaluate/replace, report.

    `objective` maps a FeatureSubset to an accuracy percent. Deterministic
    given cfg.seed; issues exactly hms + max_iterations objective calls.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    memory = initialize_memory(cfg, objective, rng)
    evaluations = cfg.hms
    best = memory.best()
    best_trace: list[float] = []
    worst_trace: list[float] = []
    replaced_trace: list[bool] = []
    for _ in range(cfg.max_iterations):
        candidate_subset = improvise(memory, cfg, rng)
        fitness = float(objective(candidate_subset))
        evaluations += 1
        candidate = Harmony(candidate_subset, fitness)
        replaced = replace_worst(memory, candidate)
        if candidate.fitness > best.fitness:
            best = candidate
        best_trace.append(best.fitness)
        worst_trace.append(memory.worst().fitness)
        replaced_trace.append(replaced)
    history = RunHistory(
        best_fitness=tuple(best_trace),
        worst_fitness=tuple(worst_trace),
        replaced=tuple(replaced_trace),
        best=best,
        evaluations=evaluations,
        elapsed_seconds=time.perf_counter() - start,
    )
    return best, history
