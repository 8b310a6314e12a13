"""
Accuracy as a function of the retained feature fraction
=======================================================

Runs one harmony search per requested percentage of the feature count
(subset size = floor(pct * n / 100), at least 1) to show how quickly the
wrapper accuracy saturates once the informative columns fit inside the
budget.
"""

from subsetharmony import (
    HsConfig,
    ObjectiveConfig,
    SubsetObjective,
    derive_seed,
    render_report,
    sweep_fractions,
)
from subsetharmony.synth import planted_dataset

data, informative = planted_dataset(
    n_samples=150, n_features=24, n_informative=3, class_sep=1.2, seed=9
)
print(f"planted informative features: {informative}\n")

objective = SubsetObjective(data, ObjectiveConfig(
    classifier="knn", folds=3, fold_seed=derive_seed(0, "folds"),
))

base = HsConfig(n_features=24, subset_size=1, hms=10, max_iterations=150,
                seed=0)
report = sweep_fractions((15.0, 30.0, 45.0, 60.0, 75.0, 90.0), base, objective)

print(render_report(report, "markdown"))

best = max(range(len(report.accuracies)), key=lambda i: report.accuracies[i])
print(f"smallest competitive budget: {report.fraction_percents[best]:g}% "
      f"of the features (k={report.subset_sizes[best]}) at "
      f"{report.accuracies[best]:.2f}%")
