"""Seeded generators for the synthetic benchmark models.

Two families of sparse additive models: equicorrelated Gaussian predictors
with linear components ("model1"), and independent Uniform[0,1] predictors
with square or cosine components ("model2").  The response is the sum of
the first ``s`` component functions scaled by ``1/sqrt(s)`` plus Gaussian
noise, so the relevant variables are always indices ``0..s-1``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .screening import Dataset, SupportSet

FAMILIES = ("model1", "model2")
COMPONENTS = ("linear", "square", "cosine")

# per-variable variance of the component function, before 1/s scaling:
# linear on N(0,1) -> 1; square on U[0,1] -> 1/5 - 1/9; cosine on U[0,1] -> 1/2
_COMPONENT_VARIANCE = {"linear": 1.0, "square": 4.0 / 45.0, "cosine": 0.5}


@dataclass(frozen=True)
class ModelSpec:
    """Generative description of one synthetic benchmark dataset."""

    family: str
    n: int
    p: int = 200
    s: int = 4
    rho: float = 0.0
    sigma: float = 0.1
    component: str = "linear"
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.component not in COMPONENTS:
            raise ValueError(
                f"component must be one of {COMPONENTS}, got {self.component!r}"
            )
        if self.family == "model1" and self.component != "linear":
            raise ValueError("model1 uses the linear component")
        if self.family == "model2" and self.component == "linear":
            raise ValueError("model2 uses the square or cosine component")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.s <= self.p:
            raise ValueError(f"s must be in [1, p={self.p}], got {self.s}")
        if self.family == "model1" and not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must be in [0, 1), got {self.rho}")
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def label(self) -> str:
        return f"{self.family}:{self.component}"


@dataclass(frozen=True)
class LabeledDataset:
    """Generated dataset with its ground truth.

    ``population_signal`` is the smallest per-relevant-variable variance of
    the marginal regression function.  For model1 with ``rho > 0`` the
    stored value is the independent-case one and ``signal_exact`` is False.
    """

    data: Dataset
    truth: SupportSet
    population_signal: float
    signal_exact: bool = True


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based: streams derived from structured seeds are
    # independent, so parallel replications stay deterministic
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def sample_equicorrelated_gaussian(n: int, p: int, rho: float, seed: int) -> np.ndarray:
    """Gaussian matrix with unit variances and constant pairwise correlation.

    One-factor construction: ``sqrt(rho) * Z0 + sqrt(1 - rho) * Zj`` with a
    shared factor per row, which realizes the equicorrelation exactly in
    O(np).  Negative ``rho`` is rejected (no such one-factor form).
    """
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"rho must be in [0, 1), got {rho}")
    if n < 1 or p < 1:
        raise ValueError(f"n and p must be >= 1, got n={n}, p={p}")
    return _equicorrelated(_rng(seed), n, p, rho)


def _equicorrelated(rng: np.random.Generator, n: int, p: int, rho: float) -> np.ndarray:
    shared = rng.standard_normal(n)
    own = rng.standard_normal((p, n))
    X = math.sqrt(rho) * shared + math.sqrt(1.0 - rho) * own
    return X.T  # column-contiguous


def generate(spec: ModelSpec) -> LabeledDataset:
    """Draw one dataset from the model, bit-reproducible from the seed."""
    rng = _rng(spec.seed)
    n, p, s = spec.n, spec.p, spec.s
    if spec.family == "model1":
        X = _equicorrelated(rng, n, p, spec.rho)
        component_values = X[:, :s]
    else:
        X = rng.random((p, n)).T
        if spec.component == "square":
            component_values = np.square(X[:, :s])
        else:
            component_values = np.cos(2.0 * math.pi * X[:, :s])
    signal = component_values.sum(axis=1) / math.sqrt(s)
    noise = spec.sigma * rng.standard_normal(n)
    y = signal + noise
    data = Dataset(predictors=X, response=y)
    truth = SupportSet(indices=frozenset(range(s)))
    return LabeledDataset(
        data=data,
        truth=truth,
        population_signal=_COMPONENT_VARIANCE[spec.component] / s,
        signal_exact=not (spec.family == "model1" and spec.rho > 0.0),
    )
