"""Experiment driver: parameter grid, optimizer comparison, fraction sweep.

Reports are plain dataclasses with CSV and Markdown emitters. CSV files are
minimal (no quoting, "." decimals, LF line endings) so repeated emission of
the same report is byte-identical.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, replace
from typing import Sequence

from .baselines import GaConfig, PcaConfig, PsoConfig, ga_run, pca_run, pso_run
from .harmony import HsConfig, hs_run
from .seeding import derive_seed
from .wrapper import SubsetObjective

DEFAULT_FRACTIONS = (15.0, 30.0, 45.0, 60.0, 75.0, 90.0)


def _fmt_acc(value: float) -> str:
    return f"{value:.2f}"


def _fmt_fraction(pct: float) -> str:
    return str(int(pct)) if float(pct).is_integer() else repr(float(pct))


@dataclass(frozen=True)
class GridReport:
    """Accuracy for every (iterations, hms) cell, with the best cell marked."""

    iteration_values: tuple[int, ...]   # row labels
    hms_values: tuple[int, ...]         # column labels
    cells: tuple[tuple[float, ...], ...]  # cells[row][col], percent
    best_row: int
    best_col: int

    def __post_init__(self) -> None:
        if not self.iteration_values or not self.hms_values:
            raise ValueError("grid labels must be non-empty")
        if len(self.cells) != len(self.iteration_values):
            raise ValueError("row count does not match iteration labels")
        for row in self.cells:
            if len(row) != len(self.hms_values):
                raise ValueError("column count does not match hms labels")
        if not (0 <= self.best_row < len(self.iteration_values)):
            raise ValueError(f"best_row out of range: {self.best_row}")
        if not (0 <= self.best_col < len(self.hms_values)):
            raise ValueError(f"best_col out of range: {self.best_col}")
        top = max(v for row in self.cells for v in row)
        if self.cells[self.best_row][self.best_col] != top:
            raise ValueError("best cell does not hold the maximum")

    @property
    def best_accuracy(self) -> float:
        return self.cells[self.best_row][self.best_col]


@dataclass(frozen=True)
class ComparisonRow:
    optimizer: str
    subset_size: int
    accuracy_percent: float
    execution_seconds: float

    def __post_init__(self) -> None:
        if self.subset_size < 1:
            raise ValueError(f"subset_size must be >= 1, got {self.subset_size}")
        if not 0.0 <= self.accuracy_percent <= 100.0:
            raise ValueError(f"accuracy out of range: {self.accuracy_percent}")
        if self.execution_seconds < 0.0:
            raise ValueError(f"negative execution time: {self.execution_seconds}")


@dataclass(frozen=True)
class ComparisonReport:
    """One row per optimizer: name, best subset size, accuracy, wall seconds."""

    rows: tuple[ComparisonRow, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("comparison report must have at least one row")


@dataclass(frozen=True)
class FractionSweepReport:
    """Accuracy at each requested fraction of the full feature count."""

    fraction_percents: tuple[float, ...]
    subset_sizes: tuple[int, ...]
    accuracies: tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.fraction_percents)
        if n == 0:
            raise ValueError("fraction sweep must cover at least one fraction")
        if len(self.subset_sizes) != n or len(self.accuracies) != n:
            raise ValueError("fraction sweep field lengths differ")
        if any(k < 1 for k in self.subset_sizes):
            raise ValueError("subset sizes must be >= 1")


def _best_cell(
    cells: Sequence[Sequence[float]],
    iteration_values: Sequence[int],
    hms_values: Sequence[int],
) -> tuple[int, int]:
    # ties break to the lowest iteration count, then the lowest HMS
    top = max(v for row in cells for v in row)
    candidates = [
        (iteration_values[r], hms_values[c], r, c)
        for r in range(len(iteration_values))
        for c in range(len(hms_values))
        if cells[r][c] == top
    ]
    _, _, r, c = min(candidates)
    return r, c


def sweep_grid(
    hms_values: Sequence[int],
    iteration_values: Sequence[int],
    base: HsConfig,
    objective: SubsetObjective,
) -> GridReport:
    """Run hs_run for every (hms, iterations) pair with per-cell seeds."""
    if not hms_values or not iteration_values:
        raise ValueError("hms_values and iteration_values must be non-empty")
    cells: list[tuple[float, ...]] = []
    for iterations in iteration_values:
        row: list[float] = []
        for hms in hms_values:
            cfg = replace(
                base,
                hms=int(hms),
                max_iterations=int(iterations),
                seed=derive_seed(base.seed, "grid", str(hms), str(iterations)),
            )
            best, _ = hs_run(cfg, objective)
            row.append(best.fitness)
        cells.append(tuple(row))
    r, c = _best_cell(cells, iteration_values, hms_values)
    return GridReport(
        iteration_values=tuple(int(v) for v in iteration_values),
        hms_values=tuple(int(v) for v in hms_values),
        cells=tuple(cells),
        best_row=r,
        best_col=c,
    )


def fraction_to_size(pct: float, n_features: int) -> int:
    """floor(pct * n_features / 100), never below 1."""
    if not 0.0 < pct <= 100.0:
        raise ValueError(f"fraction percent must be in (0, 100], got {pct}")
    if float(pct).is_integer():
        k = (n_features * int(pct)) // 100
    else:
        k = math.floor(n_features * pct / 100.0)
    return max(1, k)


def sweep_fractions(
    fractions: Sequence[float],
    base: HsConfig,
    objective: SubsetObjective,
) -> FractionSweepReport:
    """One hs_run per fraction, subset size resolved by the floor rule."""
    if not fractions:
        raise ValueError("fractions must be non-empty")
    sizes: list[int] = []
    accuracies: list[float] = []
    for pct in fractions:
        k = fraction_to_size(pct, base.n_features)
        cfg = replace(
            base,
            subset_size=k,
            seed=derive_seed(base.seed, "fraction", _fmt_fraction(pct)),
        )
        best, _ = hs_run(cfg, objective)
        sizes.append(k)
        accuracies.append(best.fitness)
    return FractionSweepReport(
        fraction_percents=tuple(float(p) for p in fractions),
        subset_sizes=tuple(sizes),
        accuracies=tuple(accuracies),
    )


OptimizerConfig = HsConfig | GaConfig | PsoConfig | PcaConfig


def compare_optimizers(
    configs: Sequence[OptimizerConfig],
    objective: SubsetObjective,
) -> ComparisonReport:
    """Run each optimizer against a freshly cleared cache and time the run.

    The cache reset keeps the wall-clock column fair: no optimizer inherits
    evaluations paid for by an earlier one.
    """
    if not configs:
        raise ValueError("at least one optimizer config is required")
    rows: list[ComparisonRow] = []
    for cfg in configs:
        objective.reset_cache()
        start = time.perf_counter()
        if isinstance(cfg, HsConfig):
            name = "HS"
            best, _ = hs_run(cfg, objective)
            size, acc = best.subset.k, best.fitness
        elif isinstance(cfg, GaConfig):
            name = "GA"
            best, _ = ga_run(cfg, objective)
            size, acc = best.subset.k, best.fitness
        elif isinstance(cfg, PsoConfig):
            name = "PSO"
            best, _ = pso_run(cfg, objective)
            size, acc = best.subset.k, best.fitness
        elif isinstance(cfg, PcaConfig):
            name = "PCA"
            result = pca_run(cfg, objective)
            size, acc = result.components, result.accuracy_percent
        else:
            raise TypeError(f"unsupported optimizer config: {type(cfg).__name__}")
        elapsed = time.perf_counter() - start
        rows.append(ComparisonRow(name, size, acc, elapsed))
    return ComparisonReport(rows=tuple(rows))


# --- rendering ---

def render_grid_csv(report: GridReport) -> str:
    lines = ["iterations," + ",".join(str(h) for h in report.hms_values)]
    for it, row in zip(report.iteration_values, report.cells):
        lines.append(str(it) + "," + ",".join(_fmt_acc(v) for v in row))
    return "\n".join(lines) + "\n"


def render_grid_markdown(report: GridReport) -> str:
    header = "| iterations | " + " | ".join(str(h) for h in report.hms_values) + " |"
    rule = "| --- |" + " --- |" * len(report.hms_values)
    lines = [header, rule]
    for r, (it, row) in enumerate(zip(report.iteration_values, report.cells)):
        rendered = [
            f"**{_fmt_acc(v)}**" if (r, c) == (report.best_row, report.best_col)
            else _fmt_acc(v)
            for c, v in enumerate(row)
        ]
        lines.append(f"| {it} | " + " | ".join(rendered) + " |")
    return "\n".join(lines) + "\n"


def render_comparison_csv(report: ComparisonReport) -> str:
    lines = ["optimizer,subset_size,accuracy_percent,execution_seconds"]
    for row in report.rows:
        lines.append(
            f"{row.optimizer},{row.subset_size},"
            f"{_fmt_acc(row.accuracy_percent)},{row.execution_seconds:.2f}"
        )
    return "\n".join(lines) + "\n"


def render_comparison_markdown(report: ComparisonReport) -> str:
    lines = [
        "| optimizer | subset_size | accuracy_percent | execution_seconds |",
        "| --- | --- | --- | --- |",
    ]
    for row in report.rows:
        lines.append(
            f"| {row.optimizer} | {row.subset_size} | "
            f"{_fmt_acc(row.accuracy_percent)} | {row.execution_seconds:.2f} |"
        )
    return "\n".join(lines) + "\n"


def render_fractions_csv(report: FractionSweepReport) -> str:
    lines = ["fraction_percent,subset_size,accuracy_percent"]
    for pct, k, acc in zip(
        report.fraction_percents, report.subset_sizes, report.accuracies
    ):
        lines.append(f"{_fmt_fraction(pct)},{k},{_fmt_acc(acc)}")
    return "\n".join(lines) + "\n"


def render_fractions_markdown(report: FractionSweepReport) -> str:
    lines = [
        "| fraction_percent | subset_size | accuracy_percent |",
        "| --- | --- | --- |",
    ]
    for pct, k, acc in zip(
        report.fraction_percents, report.subset_sizes, report.accuracies
    ):
        lines.append(f"| {_fmt_fraction(pct)} | {k} | {_fmt_acc(acc)} |")
    return "\n".join(lines) + "\n"


_RENDERERS = {
    (GridReport, "csv"): render_grid_csv,
    (GridReport, "markdown"): render_grid_markdown,
    (ComparisonReport, "csv"): render_comparison_csv,
    (ComparisonReport, "markdown"): render_comparison_markdown,
    (FractionSweepReport, "csv"): render_fractions_csv,
    (FractionSweepReport, "markdown"): render_fractions_markdown,
}


def render_report(report, fmt: str = "csv") -> str:
    try:
        renderer = _RENDERERS[(type(report), fmt)]
    except KeyError:
        raise ValueError(
            f"no {fmt!r} renderer for {type(report).__name__}"
        ) from None
    return renderer(report)


def emit_report(report, fmt: str, path) -> None:
    """Write a report to disk; same report + format -> byte-identical file."""
    text = render_report(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --- parsing (CSV only; round-trips the emitted files) ---

def _read_rows(path) -> list[list[str]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return [row for row in csv.reader(fh) if row]


def read_grid_csv(path) -> GridReport:
    rows = _read_rows(path)
    if not rows or rows[0][0] != "iterations":
        raise ValueError(f"not a grid report: {path}")
    hms_values = tuple(int(v) for v in rows[0][1:])
    iteration_values = tuple(int(row[0]) for row in rows[1:])
    cells = tuple(tuple(float(v) for v in row[1:]) for row in rows[1:])
    r, c = _best_cell(cells, iteration_values, hms_values)
    return GridReport(iteration_values, hms_values, cells, r, c)


def read_comparison_csv(path) -> ComparisonReport:
    rows = _read_rows(path)
    expect = ["optimizer", "subset_size", "accuracy_percent", "execution_seconds"]
    if not rows or rows[0] != expect:
        raise ValueError(f"not a comparison report: {path}")
    parsed = tuple(
        ComparisonRow(row[0], int(row[1]), float(row[2]), float(row[3]))
        for row in rows[1:]
    )
    return ComparisonReport(rows=parsed)


def read_fractions_csv(path) -> FractionSweepReport:
    rows = _read_rows(path)
    if not rows or rows[0] != ["fraction_percent", "subset_size", "accuracy_percent"]:
        raise ValueError(f"not a fraction sweep report: {path}")
    body = rows[1:]
    return FractionSweepReport(
        fraction_percents=tuple(float(row[0]) for row in body),
        subset_sizes=tuple(int(row[1]) for row in body),
        accuracies=tuple(float(row[2]) for row in body),
    )
