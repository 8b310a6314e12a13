"""
Scoring one fixed subset with the cross-validated wrapper
=========================================================

Evaluates a chosen feature set under stratified 3-fold CV twice, once
with the from-scratch MLP and once with kNN, and reports a Wilson score
interval for the pooled accuracy.
"""

from subsetharmony import (
    FeatureSubset,
    MlpConfig,
    ObjectiveConfig,
    SubsetObjective,
    confidence_interval,
    derive_seed,
)
from subsetharmony.synth import planted_dataset

data, informative = planted_dataset(
    n_samples=200, n_features=20, n_informative=3, class_sep=1.0, seed=1
)
subset = FeatureSubset(informative)
print(f"evaluating the planted subset {subset.key}\n")

for name, cfg in (
    ("kNN (1 neighbor)", ObjectiveConfig(
        classifier="knn", folds=3, fold_seed=derive_seed(0, "folds"))),
    ("MLP (from scratch)", ObjectiveConfig(
        classifier="mlp",
        mlp=MlpConfig(epochs=200, seed=derive_seed(0, "mlp")),
        folds=3, fold_seed=derive_seed(0, "folds"))),
):
    result = SubsetObjective(data, cfg).evaluate(subset)
    lo, hi = confidence_interval(
        result.correct_count / result.total_count, result.total_count
    )
    folds = ",".join(f"{a:.2f}" for a in result.per_fold_accuracy)
    print(f"{name}:")
    print(f"  pooled accuracy: {result.accuracy_percent:.2f}% "
          f"({result.correct_count}/{result.total_count})")
    print(f"  per-fold:        {folds}")
    print(f"  95% Wilson CI:   [{100 * lo:.2f}%, {100 * hi:.2f}%]\n")
