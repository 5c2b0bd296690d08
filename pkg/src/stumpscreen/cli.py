"""Command-line front end: screen CSV datasets, simulate benchmark data, run grids.

Exit status is 0 on success and 1 on any diagnosed error; every error path
prints a single ``error: ...`` line to stderr.  Output files are written
atomically (temp file plus rename).
"""

import argparse
import json
import math
import os
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from .dataio import atomic_write, dataset_csv, load_csv_dataset
from .errors import ConfigError, StumpScreenError, ZeroVarianceError
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    result_csv,
    result_json,
    run_experiment,
)
from .screening import fit_all_stumps, rank_sis
from .stump import stump_correlation
from .synthetic import ModelSpec, generate
from .thresholds import elbow_threshold, permutation_threshold

SEED_ENV = "STUMPSCREEN_SEED"

SCREEN_REPORT_SCHEMA = {
    "type": "object",
    "required": ["input", "target", "mode", "n", "p", "dropped_rows", "selection", "variables"],
    "additionalProperties": False,
    "properties": {
        "input": {"type": "string"},
        "target": {"type": "string"},
        "mode": {"enum": ["regression", "classification"]},
        "n": {"type": "integer", "minimum": 2},
        "p": {"type": "integer", "minimum": 1},
        "dropped_rows": {"type": "integer", "minimum": 0},
        "selection": {
            "type": "object",
            "required": ["rule", "gamma", "selected_count"],
            "additionalProperties": False,
            "properties": {
                "rule": {"enum": ["none", "top-k", "permutation", "elbow", "fixed"]},
                "top_k": {"type": ["integer", "null"]},
                "gamma": {"type": ["number", "null"]},
                "permutations": {"type": ["integer", "null"]},
                "selected_count": {"type": "integer", "minimum": 0},
            },
        },
        "variables": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "rank", "delta", "split_value", "correlation", "selected"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "rank": {"type": "integer", "minimum": 1},
                    "delta": {"type": "number", "minimum": 0},
                    "split_value": {"type": ["number", "null"]},
                    "correlation": {"type": "number", "minimum": 0, "maximum": 1},
                    "selected": {"type": "boolean"},
                    "sis_score": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
    },
}


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "")
    if raw.strip():
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stumpscreen",
        description="Rank predictor variables by the impurity reduction of an "
        "optimal decision stump per variable.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    screen = sub.add_parser("screen", help="rank the columns of a numeric CSV file")
    screen.add_argument("--input", required=True, help="CSV file with a header row")
    screen.add_argument("--target", required=True, help="response column name (or 0-based index)")
    screen.add_argument(
        "--mode",
        choices=["regression", "classification"],
        default="regression",
        help="classification requires a 0/1 target (default: regression)",
    )
    rule = screen.add_mutually_exclusive_group()
    rule.add_argument("--top-k", type=int, default=None, help="select the K best-ranked variables")
    rule.add_argument(
        "--threshold",
        default=None,
        help="selection cutoff: 'permutation', 'elbow', or 'value:<float>'",
    )
    screen.add_argument(
        "--permutations",
        type=int,
        default=10,
        help="number of permutations for --threshold permutation (default: 10)",
    )
    screen.add_argument("--with-sis", action="store_true", help="also report marginal-correlation scores")
    screen.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    screen.add_argument("--format", choices=["json", "csv"], default="json", help="report format (default: json)")
    screen.add_argument("--output", default=None, help="report path (default: stdout)")

    simulate = sub.add_parser("simulate", help="generate a synthetic benchmark dataset")
    simulate.add_argument("--model", required=True, choices=["model1", "model2"])
    simulate.add_argument(
        "--component",
        choices=["linear", "square", "cosine"],
        default=None,
        help="component function (model1: linear; model2: square or cosine)",
    )
    simulate.add_argument("--n", type=int, required=True, help="number of rows")
    simulate.add_argument("--p", type=int, default=200, help="number of predictors (default: 200)")
    simulate.add_argument("--s", type=int, required=True, help="number of relevant variables")
    simulate.add_argument("--rho", type=float, default=0.0, help="model1 pairwise correlation (default: 0)")
    simulate.add_argument("--sigma", type=float, default=0.1, help="noise standard deviation (default: 0.1)")
    simulate.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    simulate.add_argument("--output", required=True, help="dataset CSV path (metadata goes to <output>.meta.json)")

    bench = sub.add_parser("bench", help="run an experiment grid from a JSON config")
    bench.add_argument("--config", required=True, help="experiment configuration (JSON)")
    bench.add_argument("--output-dir", required=True, help="directory for results.csv and results.json")
    return parser


def _resolve_seed(value) -> int:
    return _default_seed() if value is None else value


def _float_or_none(value: float):
    return None if value is None or math.isnan(value) else float(value)


def cmd_screen(args) -> int:
    dataset, dropped = load_csv_dataset(args.input, args.target, args.mode)
    y = dataset.response
    if float(np.square(y - y.mean()).mean()) == 0.0:
        raise ZeroVarianceError("zero response variance")
    seed = _resolve_seed(args.seed)

    fits = fit_all_stumps(dataset)
    scores = np.array([f.delta for f in fits])
    order = np.argsort(-scores, kind="stable")
    sis_scores = rank_sis(dataset).scores if args.with_sis else None

    rule, gamma, top_k_used, permutations_used = "none", None, None, None
    if args.top_k is not None:
        if not 1 <= args.top_k <= dataset.p:
            raise ConfigError(f"--top-k must be in [1, {dataset.p}], got {args.top_k}")
        rule, top_k_used = "top-k", args.top_k
        selected = {int(j) for j in order[: args.top_k]}
    elif args.threshold is not None:
        if args.threshold == "permutation":
            if args.permutations < 1:
                raise ConfigError(f"--permutations must be >= 1, got {args.permutations}")
            decision = permutation_threshold(dataset, args.permutations, seed)
            rule, permutations_used = "permutation", args.permutations
        elif args.threshold == "elbow":
            decision = elbow_threshold(scores, seed)
            rule = "elbow"
        elif args.threshold.startswith("value:"):
            try:
                gamma = float(args.threshold.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"invalid fixed threshold {args.threshold!r}") from None
            rule = "fixed"
            selected = {int(j) for j in np.flatnonzero(scores >= gamma)}
            decision = None
        else:
            raise ConfigError(
                f"--threshold must be 'permutation', 'elbow' or 'value:<float>', got {args.threshold!r}"
            )
        if rule in ("permutation", "elbow"):
            gamma = decision.gamma
            selected = set(decision.selected.indices)
    else:
        selected = set(range(dataset.p))

    variables = []
    for rank, j in enumerate(order, start=1):
        j = int(j)
        entry = {
            "name": dataset.names[j],
            "rank": rank,
            "delta": fits[j].delta,
            "split_value": _float_or_none(fits[j].split_value),
            "correlation": stump_correlation(fits[j], dataset.column(j), y),
            "selected": j in selected,
        }
        if sis_scores is not None:
            entry["sis_score"] = float(sis_scores[j])
        variables.append(entry)

    report = {
        "input": str(args.input),
        "target": str(args.target),
        "mode": args.mode,
        "n": dataset.n,
        "p": dataset.p,
        "dropped_rows": dropped,
        "selection": {
            "rule": rule,
            "top_k": top_k_used,
            "gamma": gamma,
            "permutations": permutations_used,
            "selected_count": len(selected),
        },
        "variables": variables,
    }
    if args.format == "json":
        text = json.dumps(report, indent=2, allow_nan=False) + "\n"
    else:
        header = ["name", "rank", "delta", "split_value", "correlation", "selected", "gamma"]
        if sis_scores is not None:
            header.insert(5, "sis_score")
        lines = [",".join(header)]
        for entry in variables:
            cells = [
                entry["name"],
                str(entry["rank"]),
                repr(entry["delta"]),
                "" if entry["split_value"] is None else repr(entry["split_value"]),
                repr(entry["correlation"]),
            ]
            if sis_scores is not None:
                cells.append(repr(entry["sis_score"]))
            cells.append(str(entry["selected"]).lower())
            cells.append("" if gamma is None else repr(gamma))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"

    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_simulate(args) -> int:
    component = args.component
    if component is None:
        if args.model == "model2":
            raise ConfigError("model2 requires --component square or cosine")
        component = "linear"
    spec = ModelSpec(
        family=args.model,
        n=args.n,
        p=args.p,
        s=args.s,
        rho=args.rho,
        sigma=args.sigma,
        component=component,
        seed=_resolve_seed(args.seed),
    )
    labeled = generate(spec)
    atomic_write(args.output, dataset_csv(labeled.data))
    meta = {
        "family": spec.family,
        "component": spec.component,
        "n": spec.n,
        "p": spec.p,
        "s": spec.s,
        "rho": spec.rho,
        "sigma": spec.sigma,
        "seed": spec.seed,
        "truth_indices": sorted(labeled.truth.indices),
        "population_signal": labeled.population_signal,
        "signal_exact": labeled.signal_exact,
    }
    atomic_write(f"{args.output}.meta.json", json.dumps(meta, indent=2) + "\n")
    print(f"wrote {spec.label} dataset: n={spec.n} p={spec.p} s={spec.s} -> {args.output}")
    return 0


def _require(doc: dict, key: str, kind, what: str):
    if key not in doc:
        raise ConfigError(f"config field {key!r} is missing")
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ConfigError(f"config field {key!r} must be {what}")
    return value


def _spec_from_config(entry, index: int) -> ModelSpec:
    if not isinstance(entry, dict):
        raise ConfigError(f"config field 'spec_grid[{index}]' must be an object")
    allowed = {f.name for f in fields(ModelSpec)}
    unknown = set(entry) - allowed
    if unknown:
        raise ConfigError(
            f"config field 'spec_grid[{index}]' has unknown keys: {sorted(unknown)}"
        )
    for key in ("family", "n"):
        if key not in entry:
            raise ConfigError(f"config field 'spec_grid[{index}].{key}' is missing")
    try:
        return ModelSpec(**entry)
    except ValueError as exc:
        raise ConfigError(f"config field 'spec_grid[{index}]' is invalid: {exc}") from None


def load_experiment_config(path) -> tuple[str, ExperimentConfig]:
    """Parse and validate a bench config file; errors name the offending field."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    experiment = _require(doc, "experiment", str, "a string")
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"config field 'experiment' must be one of {EXPERIMENTS}")
    raw_grid = _require(doc, "spec_grid", list, "a non-empty array")
    if not raw_grid:
        raise ConfigError("config field 'spec_grid' must be a non-empty array")
    grid = tuple(_spec_from_config(entry, i) for i, entry in enumerate(raw_grid))
    known = {
        "experiment",
        "spec_grid",
        "methods",
        "replications",
        "threshold_method",
        "permutations",
        "master_seed",
        "workers",
    }
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"config has unknown fields: {sorted(unknown)}")
    kwargs = {"spec_grid": grid}
    if "methods" in doc:
        methods = _require(doc, "methods", list, "an array of method names")
        kwargs["methods"] = tuple(methods)
    for key in ("replications", "permutations", "master_seed", "workers"):
        if key in doc:
            kwargs[key] = _require(doc, key, int, "an integer")
    if "threshold_method" in doc:
        kwargs["threshold_method"] = _require(doc, "threshold_method", str, "a string")
    return experiment, ExperimentConfig(**kwargs)


def cmd_bench(args) -> int:
    experiment, cfg = load_experiment_config(args.config)
    result = run_experiment(experiment, cfg)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    atomic_write(out_dir / "results.csv", result_csv(result))
    atomic_write(out_dir / "results.json", result_json(result))
    for record in result.records:
        spec = record.spec
        summary = " ".join(f"{k}={v:.6g}" for k, v in sorted(record.metrics.items()))
        print(
            f"{spec.label} n={spec.n} p={spec.p} s={spec.s} rho={spec.rho} "
            f"method={record.method} {summary}"
        )
    print(f"wrote {out_dir / 'results.csv'} and {out_dir / 'results.json'}")
    return 0


_COMMANDS = {"screen": cmd_screen, "simulate": cmd_simulate, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (StumpScreenError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
