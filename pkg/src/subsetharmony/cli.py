"""Command-line front end.

Precedence for every setting: command-line flag, then SUBSETHARMONY_SEED
(seed only), then --config file entries, then built-in defaults. The config
file is flat key=value text using the long flag names.

Exit codes: 0 success, 1 usage or validation error, 2 data error,
3 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .baselines import GaConfig, PcaConfig, PsoConfig, ga_run, pca_run, pso_run
from .classifiers import KnnConfig, MlpConfig
from .dataset import Dataset, DatasetError, load_csv
from .harmony import PITCH_TOPOLOGIES, HsConfig, hs_run
from .harness import (
    compare_optimizers,
    emit_report,
    sweep_fractions,
    sweep_grid,
)
from .seeding import derive_seed
from .subsets import FeatureSubset
from .wrapper import ObjectiveConfig, SubsetObjective, confidence_interval

ENV_SEED = "SUBSETHARMONY_SEED"
_BOOLEAN_KEYS = frozenset({"standardize", "fold-average"})
_TRUE_WORDS = frozenset({"true", "1", "yes", "on"})
_FALSE_WORDS = frozenset({"false", "0", "no", "off"})


class UsageError(Exception):
    """Bad invocation: unknown flag, missing file, out-of-range value."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{message}\n{self.format_usage()}".rstrip())


@dataclass(frozen=True)
class RunSpec:
    """Everything a run needs, resolved from flags, env, and config file."""

    command: str
    data_path: str
    label_column: str
    seed: int
    objective: ObjectiveConfig
    output_path: str
    output_format: str
    k: int | None = None
    optimizer: str = "hs"
    optimizers: tuple[str, ...] = ("hs", "ga", "pso")
    hms: int = 20
    hmcr: float = 0.7
    par: float = 0.3
    bandwidth: float = 1.0
    iterations: int = 100
    pitch_topology: str = "index"
    population: int = 20
    generations: int = 100
    crossover_rate: float = 1.0
    mutation_rate: float = 0.1
    particles: int = 20
    pso_iterations: int = 100
    c1: float = 2.0
    c2: float = 2.0
    inertia: float = 0.9
    components: int | None = None
    fractions: tuple[float, ...] = (15.0, 30.0, 45.0, 60.0, 75.0, 90.0)
    hms_values: tuple[int, ...] = (10, 20, 30, 40, 50)
    iteration_values: tuple[int, ...] = (10, 20, 30, 40, 50)
    features: tuple[int, ...] = ()


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def _name_list(text: str) -> tuple[str, ...]:
    values = tuple(tok.strip().lower() for tok in text.split(",") if tok.strip())
    if not values:
        raise argparse.ArgumentTypeError("expected at least one optimizer name")
    bad = [v for v in values if v not in ("hs", "ga", "pso", "pca")]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown optimizer(s): {','.join(bad)}")
    return values


def _add_common(sub: argparse.ArgumentParser, *, reports: bool,
                default_output: str) -> None:
    sub.add_argument("--data", required=True, help="path to the CSV dataset")
    sub.add_argument("--label", default="label", help="label column name")
    sub.add_argument("--seed", type=int, default=0,
                     help="global seed; per-component seeds derive from it")
    sub.add_argument("--config", default=None,
                     help="key=value file; flags override its entries")
    sub.add_argument("--classifier", choices=("mlp", "knn"), default="mlp",
                     help="wrapped classifier")
    sub.add_argument("--folds", type=int, default=3, help="stratified CV folds")
    sub.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                     default=True, help="z-score features per fold (train stats)")
    sub.add_argument("--fold-average", action=argparse.BooleanOptionalAction,
                     default=False,
                     help="report mean of fold accuracies instead of pooled")
    sub.add_argument("--hidden", type=int, default=None,
                     help="MLP hidden neurons (default: ceil((features+classes)/2))")
    sub.add_argument("--learning-rate", type=float, default=0.3, help="MLP learning rate")
    sub.add_argument("--momentum", type=float, default=0.4, help="MLP momentum")
    sub.add_argument("--epochs", type=int, default=1000, help="MLP training epochs")
    sub.add_argument("--neighbors", type=int, default=1, help="kNN neighbor count")
    if reports:
        sub.add_argument("--output", default=None,
                         help=f"report file path (default: {default_output})")
        sub.add_argument("--format", choices=("csv", "markdown"), default="csv",
                         help="report file format")


def _add_hs_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--hms", type=int, default=20, help="harmony memory size")
    sub.add_argument("--hmcr", type=float, default=0.7, help="memory considering rate")
    sub.add_argument("--par", type=float, default=0.3, help="pitch adjusting rate")
    sub.add_argument("--bandwidth", type=float, default=1.0, help="pitch bandwidth")
    sub.add_argument("--iterations", type=int, default=100, help="HS improvisations")
    sub.add_argument("--pitch-topology", choices=PITCH_TOPOLOGIES, default="index",
                     help="neighbor line for pitch adjustment")


def _add_ga_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--population", type=int, default=20, help="GA chromosomes")
    sub.add_argument("--generations", type=int, default=100, help="GA generations")
    sub.add_argument("--crossover-rate", type=float, default=1.0, help="GA crossover rate")
    sub.add_argument("--mutation-rate", type=float, default=0.1, help="GA mutation rate")


def _add_pso_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--particles", type=int, default=20, help="PSO swarm size")
    sub.add_argument("--pso-iterations", type=int, default=100, help="PSO iterations")
    sub.add_argument("--c1", type=float, default=2.0, help="PSO cognitive factor")
    sub.add_argument("--c2", type=float, default=2.0, help="PSO social factor")
    sub.add_argument("--inertia", type=float, default=0.9, help="PSO inertia weight")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="subsetharmony",
        description="Wrapper feature selection with harmony search and baselines.",
    )
    subs = parser.add_subparsers(dest="command", metavar="command")
    kwargs = {"formatter_class": argparse.ArgumentDefaultsHelpFormatter}

    p = subs.add_parser("select", help="search for the best k-feature subset", **kwargs)
    _add_common(p, reports=False, default_output="")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--optimizer", choices=("hs", "ga", "pso"), default="hs",
                   help="search algorithm")
    _add_hs_flags(p)
    _add_ga_flags(p)
    _add_pso_flags(p)

    p = subs.add_parser("grid", help="HMS x iterations accuracy grid", **kwargs)
    _add_common(p, reports=True, default_output="grid_report.<format>")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--hms-values", type=_int_list, default=(10, 20, 30, 40, 50),
                   help="comma-separated HMS column values")
    p.add_argument("--iteration-values", type=_int_list, default=(10, 20, 30, 40, 50),
                   help="comma-separated iteration row values")
    _add_hs_flags(p)

    p = subs.add_parser("fractions", help="sweep subset sizes as feature fractions",
                        **kwargs)
    _add_common(p, reports=True, default_output="fractions_report.<format>")
    p.add_argument("--fractions", type=_float_list,
                   default=(15.0, 30.0, 45.0, 60.0, 75.0, 90.0),
                   help="comma-separated percentages in (0,100]")
    _add_hs_flags(p)

    p = subs.add_parser("compare", help="run several optimizers and time them", **kwargs)
    _add_common(p, reports=True, default_output="compare_report.<format>")
    p.add_argument("--k", type=int, required=True, help="subset size")
    p.add_argument("--optimizers", type=_name_list, default=("hs", "ga", "pso"),
                   help="comma-separated subset of hs,ga,pso,pca")
    p.add_argument("--components", type=int, default=None,
                   help="PCA dimensionality (default: sweep all)")
    _add_hs_flags(p)
    _add_ga_flags(p)
    _add_pso_flags(p)

    p = subs.add_parser("pca", help="PCA baseline accuracy", **kwargs)
    _add_common(p, reports=False, default_output="")
    p.add_argument("--components", type=int, default=None,
                   help="component count (default: sweep all and keep the best)")

    p = subs.add_parser("eval", help="cross-validated accuracy of a fixed subset",
                        **kwargs)
    _add_common(p, reports=False, default_output="")
    p.add_argument("--features", type=_int_list, required=True,
                   help="comma-separated feature indices")

    return parser


def _config_file_args(path: str) -> list[str]:
    if not os.path.isfile(path):
        raise UsageError(f"config file not found: {path}")
    args: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("_", "-")
            value = value.strip()
            if not key:
                raise UsageError(f"{path}:{lineno}: empty key")
            if key in _BOOLEAN_KEYS:
                if value.lower() in _TRUE_WORDS:
                    args.append(f"--{key}")
                elif value.lower() in _FALSE_WORDS:
                    args.append(f"--no-{key}")
                else:
                    raise UsageError(f"{path}:{lineno}: boolean expected, got {value!r}")
            else:
                args.extend([f"--{key}", value])
    return args


def _scan_config_path(tokens: list[str]) -> str | None:
    path = None
    for i, tok in enumerate(tokens):
        if tok == "--config" and i + 1 < len(tokens):
            path = tokens[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    return path


def _env_seed_args() -> list[str]:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return []
    try:
        int(raw)
    except ValueError:
        raise UsageError(f"{ENV_SEED} must be an integer, got {raw!r}") from None
    return ["--seed", raw]


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def parse_args(argv: list[str]) -> RunSpec:
    parser = _build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        if argv:
            parser.parse_args(argv)  # prints help, raises SystemExit(0)
        raise UsageError(f"a command is required\n{parser.format_usage()}".rstrip())
    command, rest = argv[0], list(argv[1:])
    config_path = _scan_config_path(rest)
    injected: list[str] = []
    if config_path is not None:
        injected.extend(_config_file_args(config_path))
    injected.extend(_env_seed_args())
    ns = parser.parse_args([command] + injected + rest)

    _check(os.path.isfile(ns.data), f"dataset file not found: {ns.data}")
    _check(ns.folds >= 2, f"--folds must be >= 2, got {ns.folds}")
    _check(ns.epochs >= 1, f"--epochs must be >= 1, got {ns.epochs}")
    _check(ns.learning_rate >= 0.0, f"--learning-rate must be >= 0, got {ns.learning_rate}")
    _check(0.0 <= ns.momentum < 1.0, f"--momentum must be in [0,1), got {ns.momentum}")
    _check(ns.hidden is None or ns.hidden >= 1, f"--hidden must be >= 1, got {ns.hidden}")
    _check(ns.neighbors >= 1, f"--neighbors must be >= 1, got {ns.neighbors}")

    k = getattr(ns, "k", None)
    if k is not None:
        _check(k >= 1, f"--k must be >= 1, got {k}")
    if hasattr(ns, "hms"):
        _check(ns.hms >= 1, f"--hms must be >= 1, got {ns.hms}")
        _check(0.0 <= ns.hmcr <= 1.0, f"--hmcr must be in [0,1], got {ns.hmcr}")
        _check(0.0 <= ns.par <= 1.0, f"--par must be in [0,1], got {ns.par}")
        _check(ns.bandwidth > 0.0, f"--bandwidth must be > 0, got {ns.bandwidth}")
        _check(ns.iterations >= 1, f"--iterations must be >= 1, got {ns.iterations}")
    if hasattr(ns, "population"):
        _check(ns.population >= 2, f"--population must be >= 2, got {ns.population}")
        _check(ns.generations >= 1, f"--generations must be >= 1, got {ns.generations}")
        _check(0.0 <= ns.crossover_rate <= 1.0,
               f"--crossover-rate must be in [0,1], got {ns.crossover_rate}")
        _check(0.0 <= ns.mutation_rate <= 1.0,
               f"--mutation-rate must be in [0,1], got {ns.mutation_rate}")
    if hasattr(ns, "particles"):
        _check(ns.particles >= 2, f"--particles must be >= 2, got {ns.particles}")
        _check(ns.pso_iterations >= 1,
               f"--pso-iterations must be >= 1, got {ns.pso_iterations}")
        _check(ns.c1 >= 0.0 and ns.c2 >= 0.0, "--c1 and --c2 must be >= 0")
        _check(ns.inertia >= 0.0, f"--inertia must be >= 0, got {ns.inertia}")
    components = getattr(ns, "components", None)
    if components is not None:
        _check(components >= 1, f"--components must be >= 1, got {components}")
    fractions = getattr(ns, "fractions", None)
    if fractions is not None:
        for pct in fractions:
            _check(0.0 < pct <= 100.0,
                   f"fractions must be in (0,100], got {pct}")
    for attr in ("hms_values", "iteration_values"):
        values = getattr(ns, attr, None)
        if values is not None:
            flag = "--" + attr.replace("_", "-")
            _check(all(v >= 1 for v in values), f"{flag} entries must be >= 1")
    features = getattr(ns, "features", None)
    if features is not None:
        try:
            FeatureSubset(tuple(features))
        except ValueError as exc:
            raise UsageError(f"--features: {exc}") from None

    try:
        mlp = MlpConfig(
            hidden_neurons=ns.hidden,
            learning_rate=ns.learning_rate,
            momentum=ns.momentum,
            epochs=ns.epochs,
            seed=derive_seed(ns.seed, "mlp"),
        )
        knn = KnnConfig(k_neighbors=ns.neighbors)
        objective = ObjectiveConfig(
            classifier=ns.classifier,
            mlp=mlp,
            knn=knn,
            folds=ns.folds,
            fold_seed=derive_seed(ns.seed, "folds"),
            standardize=ns.standardize,
            fold_average=ns.fold_average,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    output = getattr(ns, "output", None)
    fmt = getattr(ns, "format", "csv")
    if output is None:
        if command in ("grid", "fractions", "compare"):
            output = f"{command}_report.{'csv' if fmt == 'csv' else 'md'}"
        else:
            output = ""

    return RunSpec(
        command=command,
        data_path=ns.data,
        label_column=ns.label,
        seed=ns.seed,
        objective=objective,
        output_path=output,
        output_format=fmt,
        k=k,
        optimizer=getattr(ns, "optimizer", "hs"),
        optimizers=tuple(getattr(ns, "optimizers", ("hs", "ga", "pso"))),
        hms=getattr(ns, "hms", 20),
        hmcr=getattr(ns, "hmcr", 0.7),
        par=getattr(ns, "par", 0.3),
        bandwidth=getattr(ns, "bandwidth", 1.0),
        iterations=getattr(ns, "iterations", 100),
        pitch_topology=getattr(ns, "pitch_topology", "index"),
        population=getattr(ns, "population", 20),
        generations=getattr(ns, "generations", 100),
        crossover_rate=getattr(ns, "crossover_rate", 1.0),
        mutation_rate=getattr(ns, "mutation_rate", 0.1),
        particles=getattr(ns, "particles", 20),
        pso_iterations=getattr(ns, "pso_iterations", 100),
        c1=getattr(ns, "c1", 2.0),
        c2=getattr(ns, "c2", 2.0),
        inertia=getattr(ns, "inertia", 0.9),
        components=components,
        fractions=tuple(fractions) if fractions is not None
        else (15.0, 30.0, 45.0, 60.0, 75.0, 90.0),
        hms_values=tuple(getattr(ns, "hms_values", (10, 20, 30, 40, 50))),
        iteration_values=tuple(getattr(ns, "iteration_values", (10, 20, 30, 40, 50))),
        features=tuple(features) if features is not None else (),
    )


def _hs_config(spec: RunSpec, n_features: int, k: int) -> HsConfig:
    return HsConfig(
        n_features=n_features,
        subset_size=k,
        hms=spec.hms,
        hmcr=spec.hmcr,
        par=spec.par,
        bandwidth=spec.bandwidth,
        max_iterations=spec.iterations,
        seed=derive_seed(spec.seed, "hs"),
        pitch_topology=spec.pitch_topology,
    )


def _ga_config(spec: RunSpec, n_features: int, k: int) -> GaConfig:
    return GaConfig(
        n_features=n_features,
        subset_size=k,
        population=spec.population,
        generations=spec.generations,
        crossover_rate=spec.crossover_rate,
        mutation_rate=spec.mutation_rate,
        seed=derive_seed(spec.seed, "ga"),
    )


def _pso_config(spec: RunSpec, n_features: int, k: int) -> PsoConfig:
    return PsoConfig(
        n_features=n_features,
        subset_size=k,
        particles=spec.particles,
        iterations=spec.pso_iterations,
        c1=spec.c1,
        c2=spec.c2,
        inertia=spec.inertia,
        seed=derive_seed(spec.seed, "pso"),
    )


def _subset_line(prefix: str, d: Dataset, indices: tuple[int, ...]) -> str:
    ordered = tuple(sorted(indices))
    names = ",".join(d.feature_names[i] for i in ordered)
    joined = ",".join(str(i) for i in ordered)
    return f"{prefix}: {joined} ({names})"


def main(spec: RunSpec) -> int:
    d = load_csv(spec.data_path, spec.label_column)
    objective = SubsetObjective(d, spec.objective)

    if spec.command == "select":
        assert spec.k is not None
        if spec.optimizer == "hs":
            best, history = hs_run(_hs_config(spec, d.n_features, spec.k), objective)
        elif spec.optimizer == "ga":
            best, history = ga_run(_ga_config(spec, d.n_features, spec.k), objective)
        else:
            best, history = pso_run(_pso_config(spec, d.n_features, spec.k), objective)
        print(_subset_line("best subset", d, best.subset.indices))
        print(f"accuracy: {best.fitness:.2f}")
        print(f"evaluations: {history.evaluations}")
        return 0

    if spec.command == "grid":
        assert spec.k is not None
        base = _hs_config(spec, d.n_features, spec.k)
        report = sweep_grid(spec.hms_values, spec.iteration_values, base, objective)
        emit_report(report, spec.output_format, spec.output_path)
        print(
            f"best cell: iterations={report.iteration_values[report.best_row]} "
            f"hms={report.hms_values[report.best_col]} "
            f"accuracy={report.best_accuracy:.2f}"
        )
        print(f"report written: {spec.output_path}")
        return 0

    if spec.command == "fractions":
        base = _hs_config(spec, d.n_features, 1)
        report = sweep_fractions(spec.fractions, base, objective)
        emit_report(report, spec.output_format, spec.output_path)
        best_i = max(range(len(report.accuracies)),
                     key=lambda i: (report.accuracies[i], -i))
        print(
            f"best fraction: {report.fraction_percents[best_i]:g} "
            f"(k={report.subset_sizes[best_i]}) "
            f"accuracy={report.accuracies[best_i]:.2f}"
        )
        print(f"report written: {spec.output_path}")
        return 0

    if spec.command == "compare":
        assert spec.k is not None
        configs = []
        for name in spec.optimizers:
            if name == "hs":
                configs.append(_hs_config(spec, d.n_features, spec.k))
            elif name == "ga":
                configs.append(_ga_config(spec, d.n_features, spec.k))
            elif name == "pso":
                configs.append(_pso_config(spec, d.n_features, spec.k))
            else:
                configs.append(PcaConfig(components=spec.components))
        report = compare_optimizers(configs, objective)
        emit_report(report, spec.output_format, spec.output_path)
        for row in report.rows:
            print(f"{row.optimizer}: subset_size={row.subset_size} "
                  f"accuracy={row.accuracy_percent:.2f}")
        print(f"report written: {spec.output_path}")
        return 0

    if spec.command == "pca":
        result = pca_run(PcaConfig(components=spec.components), objective)
        print(f"components: {result.components}")
        print(f"accuracy: {result.accuracy_percent:.2f}")
        return 0

    # eval
    subset = FeatureSubset(spec.features)
    result = objective.evaluate(subset)
    print(_subset_line("subset", d, subset.indices))
    print(f"accuracy: {result.accuracy_percent:.2f}")
    print("per-fold: " + ",".join(f"{a:.2f}" for a in result.per_fold_accuracy))
    lo, hi = confidence_interval(
        result.correct_count / result.total_count, result.total_count
    )
    print(f"95% CI: [{100.0 * lo:.2f}, {100.0 * hi:.2f}]")
    return 0


def run(argv: list[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        spec = parse_args(list(sys.argv[1:]) if argv is None else list(argv))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    try:
        return main(spec)
    except DatasetError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostic
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
