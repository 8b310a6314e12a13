"""
Sweeping harmony-memory size against iteration budget
=====================================================

Re-runs harmony search for every (hms, iterations) pair with a seed
derived from the cell coordinates, then renders the accuracy grid. The
markdown view bolds the best cell; ties go to the cheapest settings.
"""

from subsetharmony import (
    HsConfig,
    ObjectiveConfig,
    SubsetObjective,
    derive_seed,
    render_report,
    sweep_grid,
)
from subsetharmony.synth import planted_dataset

data, _ = planted_dataset(
    n_samples=120, n_features=16, n_informative=3, class_sep=1.2, seed=4
)
objective = SubsetObjective(data, ObjectiveConfig(
    classifier="knn", folds=3, fold_seed=derive_seed(0, "folds"),
))

base = HsConfig(n_features=16, subset_size=3, seed=0)
report = sweep_grid(
    hms_values=(5, 10, 20),
    iteration_values=(25, 50, 100),
    base=base,
    objective=objective,
)

print(render_report(report, "markdown"))
print(f"best cell: iterations={report.iteration_values[report.best_row]} "
      f"hms={report.hms_values[report.best_col]} "
      f"accuracy={report.best_accuracy:.2f}%")

# the CSV form round-trips through read_grid_csv for downstream plotting
print()
print(render_report(report, "csv"))
