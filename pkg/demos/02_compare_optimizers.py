"""
Harmony search against GA, binary PSO, and a PCA baseline
=========================================================

All three search algorithms optimize the same cross-validated kNN wrapper
objective over size-3 subsets; PCA instead reduces to r components and is
scored by the same wrapper, so the accuracy column is directly comparable.
"""

from subsetharmony import (
    GaConfig,
    HsConfig,
    ObjectiveConfig,
    PcaConfig,
    PsoConfig,
    SubsetObjective,
    compare_optimizers,
    derive_seed,
    render_report,
)
from subsetharmony.synth import planted_dataset

data, informative = planted_dataset(
    n_samples=200, n_features=20, n_informative=3, class_sep=1.0, seed=1
)
print(f"planted informative features: {informative}\n")

objective = SubsetObjective(data, ObjectiveConfig(
    classifier="knn", folds=3, fold_seed=derive_seed(0, "folds"),
))

# one modest evaluation budget for every optimizer
configs = [
    HsConfig(n_features=20, subset_size=3, hms=10, max_iterations=200,
             seed=derive_seed(0, "hs")),
    GaConfig(n_features=20, subset_size=3, population=10, generations=20,
             seed=derive_seed(0, "ga")),
    PsoConfig(n_features=20, subset_size=3, particles=10, iterations=20,
              seed=derive_seed(0, "pso")),
    PcaConfig(components=3),
]
report = compare_optimizers(configs, objective)

print(render_report(report, "markdown"))
print("(the PCA row's subset_size column holds its component count)")
