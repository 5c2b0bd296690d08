"""Monte-Carlo harness: support-recovery rates over model grids.

Each grid point is replicated with seeds derived from the master seed via
counter-based streams, so results are a pure function of the configuration
and independent of how replications are scheduled across workers.  Results
serialize to flat CSV records (one row per grid point, method and metric)
and to a JSON document mirroring the result object.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError
from .screening import rank_sdi, rank_sis
from .synthetic import ModelSpec, generate
from .thresholds import elbow_threshold, permutation_threshold

METHODS = ("sdi", "sis")
THRESHOLD_METHODS = ("known-s", "permutation", "elbow")
EXPERIMENTS = (
    "partial_recovery",
    "exact_recovery",
    "threshold_study",
    "sdi_sis_agreement",
)

CSV_COLUMNS = (
    "model",
    "n",
    "p",
    "s",
    "rho",
    "sigma",
    "method",
    "metric",
    "value",
    "replications",
    "seed",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Grid of model specs plus how to run and threshold each replication."""

    spec_grid: tuple[ModelSpec, ...]
    methods: tuple[str, ...] = ("sdi",)
    replications: int = 10
    threshold_method: str = "known-s"
    permutations: int = 10
    master_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "spec_grid", tuple(self.spec_grid))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.spec_grid:
            raise ConfigError("spec_grid must be non-empty")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ConfigError(f"methods must be a non-empty subset of {METHODS}")
        if self.replications < 1:
            raise ConfigError(f"replications must be >= 1, got {self.replications}")
        if self.threshold_method not in THRESHOLD_METHODS:
            raise ConfigError(
                f"threshold_method must be one of {THRESHOLD_METHODS}, "
                f"got {self.threshold_method!r}"
            )
        if self.permutations < 1:
            raise ConfigError(f"permutations must be >= 1, got {self.permutations}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class GridRecord:
    """Aggregated metrics for one (grid point, method) pair."""

    spec: ModelSpec
    method: str
    metrics: dict


@dataclass(frozen=True)
class RecoveryResult:
    """All aggregated records for one experiment run."""

    experiment: str
    config: ExperimentConfig
    records: tuple[GridRecord, ...]


def derived_seed(master_seed: int, *path: int) -> int:
    """Deterministic child seed for a replication stream."""
    ss = np.random.SeedSequence((master_seed, *path))
    return int(ss.generate_state(1, np.uint64)[0])


def _ranking_top(d, method: str, s: int) -> frozenset:
    ranking = rank_sdi(d) if method == "sdi" else rank_sis(d)
    return frozenset(int(j) for j in ranking.order[:s])


def _run_replication(args):
    experiment, cfg, grid_idx, rep_idx = args
    spec = cfg.spec_grid[grid_idx]
    labeled = generate(replace(spec, seed=derived_seed(cfg.master_seed, grid_idx, rep_idx, 0)))
    d = labeled.data
    truth = labeled.truth.indices
    values = {}
    if experiment == "partial_recovery":
        for method in cfg.methods:
            top = _ranking_top(d, method, spec.s)
            values[method] = {"partial_recovery": len(top & truth) / spec.s}
    elif experiment == "exact_recovery":
        for method in cfg.methods:
            top = _ranking_top(d, method, spec.s)
            values[method] = {"exact_recovery": float(top == truth)}
    elif experiment == "sdi_sis_agreement":
        tops = {m: _ranking_top(d, m, spec.s) for m in ("sdi", "sis")}
        values["sdi_vs_sis"] = {"ranking_agreement": float(tops["sdi"] == tops["sis"])}
    else:  # threshold_study
        threshold_seed = derived_seed(cfg.master_seed, grid_idx, rep_idx, 1)
        if cfg.threshold_method == "permutation":
            decision = permutation_threshold(d, cfg.permutations, threshold_seed)
        else:
            decision = elbow_threshold(rank_sdi(d).scores, threshold_seed)
        metrics = {
            "selected_size_mean": float(decision.selected.sparsity),
            "exact_recovery": float(decision.selected.indices == truth),
        }
        if cfg.threshold_method == "permutation":
            metrics["gamma_mean"] = decision.gamma
        values["sdi"] = metrics
    return grid_idx, rep_idx, values


def _execute(experiment: str, cfg: ExperimentConfig) -> dict:
    jobs = [
        (experiment, cfg, g, r)
        for g in range(len(cfg.spec_grid))
        for r in range(cfg.replications)
    ]
    per_rep = {}
    if cfg.workers == 1:
        for job in jobs:
            g, r, values = _run_replication(job)
            per_rep[g, r] = values
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for g, r, values in pool.map(_run_replication, jobs, chunksize=1):
                per_rep[g, r] = values
    return per_rep


def _aggregate(experiment: str, cfg: ExperimentConfig, per_rep: dict) -> RecoveryResult:
    records = []
    for g, spec in enumerate(cfg.spec_grid):
        methods = sorted({m for r in range(cfg.replications) for m in per_rep[g, r]})
        for method in methods:
            metric_names = per_rep[g, 0][method]
            metrics = {
                name: sum(per_rep[g, r][method][name] for r in range(cfg.replications))
                / cfg.replications
                for name in metric_names
            }
            records.append(GridRecord(spec=spec, method=method, metrics=metrics))
        if experiment == "partial_recovery":
            records.append(
                GridRecord(
                    spec=spec,
                    method="baseline",
                    metrics={"partial_recovery": spec.s / spec.p},
                )
            )
    return RecoveryResult(experiment=experiment, config=cfg, records=tuple(records))


def _run(experiment: str, cfg: ExperimentConfig) -> RecoveryResult:
    return _aggregate(experiment, cfg, _execute(experiment, cfg))


def run_partial_recovery(cfg: ExperimentConfig) -> RecoveryResult:
    """Mean fraction of the true support among the top-s ranked variables.

    Requires the known-sparsity selection rule; the output includes the
    random-selection baseline ``s/p`` for every grid point.
    """
    if cfg.threshold_method != "known-s":
        raise ConfigError("partial_recovery requires threshold_method 'known-s'")
    return _run("partial_recovery", cfg)


def run_exact_recovery(cfg: ExperimentConfig) -> RecoveryResult:
    """Fraction of replications whose top-s set equals the true support."""
    if cfg.threshold_method != "known-s":
        raise ConfigError("exact_recovery requires threshold_method 'known-s'")
    return _run("exact_recovery", cfg)


def run_threshold_study(cfg: ExperimentConfig) -> RecoveryResult:
    """Selected-set size and exact recovery under a data-driven threshold.

    Permutation runs also report the mean cutoff over replications.
    """
    if cfg.threshold_method not in ("permutation", "elbow"):
        raise ConfigError("threshold_study requires threshold_method 'permutation' or 'elbow'")
    return _run("threshold_study", cfg)


def run_sdi_sis_agreement(cfg: ExperimentConfig) -> RecoveryResult:
    """Fraction of replications where the two methods pick the same top-s set."""
    if not {"sdi", "sis"} <= set(cfg.methods):
        raise ConfigError("sdi_sis_agreement requires methods ('sdi', 'sis')")
    if cfg.threshold_method != "known-s":
        raise ConfigError("sdi_sis_agreement requires threshold_method 'known-s'")
    return _run("sdi_sis_agreement", cfg)


_RUNNERS = {
    "partial_recovery": run_partial_recovery,
    "exact_recovery": run_exact_recovery,
    "threshold_study": run_threshold_study,
    "sdi_sis_agreement": run_sdi_sis_agreement,
}


def run_experiment(experiment: str, cfg: ExperimentConfig) -> RecoveryResult:
    if experiment not in _RUNNERS:
        raise ConfigError(f"experiment must be one of {EXPERIMENTS}, got {experiment!r}")
    return _RUNNERS[experiment](cfg)


def result_rows(result: RecoveryResult) -> list[tuple]:
    """Flatten a result into CSV rows, one per grid point, method and metric."""
    rows = []
    for record in result.records:
        spec = record.spec
        for metric in sorted(record.metrics):
            rows.append(
                (
                    spec.label,
                    spec.n,
                    spec.p,
                    spec.s,
                    spec.rho,
                    spec.sigma,
                    record.method,
                    metric,
                    record.metrics[metric],
                    result.config.replications,
                    result.config.master_seed,
                )
            )
    return rows


def result_csv(result: RecoveryResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result_rows(result):
        writer.writerow([value if isinstance(value, str) else repr(value) for value in row])
    return buf.getvalue()


def result_json(result: RecoveryResult) -> str:
    cfg = result.config
    document = {
        "experiment": result.experiment,
        "config": {
            "methods": list(cfg.methods),
            "replications": cfg.replications,
            "threshold_method": cfg.threshold_method,
            "permutations": cfg.permutations,
            "master_seed": cfg.master_seed,
        },
        "records": [
            {
                "model": record.spec.label,
                "family": record.spec.family,
                "component": record.spec.component,
                "n": record.spec.n,
                "p": record.spec.p,
                "s": record.spec.s,
                "rho": record.spec.rho,
                "sigma": record.spec.sigma,
                "method": record.method,
                "metrics": dict(sorted(record.metrics.items())),
            }
            for record in result.records
        ],
    }
    return json.dumps(document, indent=2, allow_nan=False) + "\n"
