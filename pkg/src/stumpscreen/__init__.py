"""Variable screening for high-dimensional data via exact optimal decision stumps.

Each predictor is scored by how much an optimal single split of that
variable reduces the response's sum of squared errors; variables are ranked
by that score.  The package adds a marginal-correlation baseline ranking,
data-driven support-size selection (permutation null and mixture-model
elbow), seeded synthetic benchmark generators and a Monte-Carlo recovery
harness, plus a CLI over all of it.
"""

from ._kernels import ACTIVE_BACKEND, COMPILED_AVAILABLE
from .errors import (
    ConfigError,
    DataFormatError,
    InvalidSplitError,
    NoElbowError,
    StumpScreenError,
    ZeroVarianceError,
)
from .experiments import (
    ExperimentConfig,
    GridRecord,
    RecoveryResult,
    run_exact_recovery,
    run_experiment,
    run_partial_recovery,
    run_sdi_sis_agreement,
    run_threshold_study,
)
from .screening import (
    Dataset,
    Ranking,
    SupportSet,
    fit_all_stumps,
    rank_sdi,
    rank_sdi_classification,
    rank_sis,
    top_k,
)
from .stump import (
    StumpFit,
    brute_force_stump,
    fit_optimal_stump,
    impurity_reduction_at_split,
    stump_correlation,
)
from .synthetic import (
    LabeledDataset,
    ModelSpec,
    generate,
    sample_equicorrelated_gaussian,
)
from .thresholds import (
    MixtureFit,
    ThresholdDecision,
    elbow_threshold,
    gmm_em,
    permutation_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "COMPILED_AVAILABLE",
    "ConfigError",
    "DataFormatError",
    "Dataset",
    "ExperimentConfig",
    "GridRecord",
    "InvalidSplitError",
    "LabeledDataset",
    "MixtureFit",
    "ModelSpec",
    "NoElbowError",
    "Ranking",
    "RecoveryResult",
    "StumpFit",
    "StumpScreenError",
    "SupportSet",
    "ThresholdDecision",
    "ZeroVarianceError",
    "brute_force_stump",
    "elbow_threshold",
    "fit_all_stumps",
    "fit_optimal_stump",
    "generate",
    "gmm_em",
    "impurity_reduction_at_split",
    "permutation_threshold",
    "rank_sdi",
    "rank_sdi_classification",
    "rank_sis",
    "run_exact_recovery",
    "run_experiment",
    "run_partial_recovery",
    "run_sdi_sis_agreement",
    "run_threshold_study",
    "sample_equicorrelated_gaussian",
    "stump_correlation",
    "top_k",
]
