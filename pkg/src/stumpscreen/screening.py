"""Whole-dataset variable ranking: stump impurity reduction and marginal correlation.

``rank_sdi`` scores every predictor by the impurity reduction of its optimal
stump; ``rank_sis`` scores by absolute marginal Pearson correlation.  Both
rank scores descending with ties broken by ascending variable index, so the
output is deterministic and directly comparable between methods.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroVarianceError
from .stump import StumpFit, fit_optimal_stump, validate_binary_response

MODES = ("regression", "classification")


@dataclass
class Dataset:
    """Predictor matrix (one column per variable) plus response vector.

    Predictors are stored column-contiguous so per-variable kernels see
    contiguous memory.  ``names`` must be unique; defaults to x1..xp.
    """

    predictors: np.ndarray
    response: np.ndarray
    names: tuple[str, ...] = ()
    mode: str = "regression"

    def __post_init__(self):
        X = np.asfortranarray(self.predictors, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError(f"predictors must be 2-D, got shape {X.shape}")
        n, p = X.shape
        if n < 1 or p < 1:
            raise ValueError(f"need at least one row and one column, got {X.shape}")
        if not np.isfinite(X).all():
            raise ValueError("predictors contain non-finite values")
        y = np.asarray(self.response, dtype=np.float64)
        if y.shape != (n,):
            raise ValueError(f"response must have shape ({n},), got {y.shape}")
        if not np.isfinite(y).all():
            raise ValueError("response contains non-finite values")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "classification":
            validate_binary_response(y)
        names = tuple(self.names) if self.names else tuple(f"x{j + 1}" for j in range(p))
        if len(names) != p:
            raise ValueError(f"expected {p} names, got {len(names)}")
        if len(set(names)) != p:
            raise ValueError("variable names must be unique")
        self.predictors = X
        self.response = y
        self.names = names

    @property
    def n(self) -> int:
        return self.predictors.shape[0]

    @property
    def p(self) -> int:
        return self.predictors.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.predictors[:, j]


@dataclass(frozen=True)
class Ranking:
    """Variables ordered by score descending; ``scores[j]`` belongs to variable j.

    ``order`` is a permutation of ``0..p-1`` with ``scores[order]``
    non-increasing; ties are resolved by ascending variable index.
    """

    order: np.ndarray
    scores: np.ndarray
    method: str

    def top(self, k: int) -> np.ndarray:
        return self.order[:k]


@dataclass(frozen=True)
class SupportSet:
    """A selected set of variable indices, optionally with the known truth."""

    indices: frozenset
    true_indices: frozenset | None = None

    @property
    def sparsity(self) -> int:
        return len(self.indices)


def _rank_order(scores: np.ndarray) -> np.ndarray:
    # stable sort on negated scores: equal scores keep ascending index order
    return np.argsort(-scores, kind="stable")


def fit_all_stumps(d: Dataset) -> list[StumpFit]:
    """Optimal stump per column against the shared response."""
    return [fit_optimal_stump(d.column(j), d.response) for j in range(d.p)]


def rank_sdi(d: Dataset) -> Ranking:
    """Rank variables by the impurity reduction of their optimal stumps.

    One sort plus one scan per column.  Constant columns score 0 and sink
    to the bottom (after index tie-break).
    """
    if d.n < 2:
        raise ValueError(f"need at least 2 rows to rank, got {d.n}")
    scores = np.array([f.delta for f in fit_all_stumps(d)], dtype=np.float64)
    return Ranking(order=_rank_order(scores), scores=scores, method="sdi")


def rank_sdi_classification(d: Dataset) -> Ranking:
    """Stump ranking for a 0/1 response.

    The variance impurity on 0/1 labels is the Gini impurity up to a
    constant factor, so the regression scan applies unchanged and yields
    the identical ranking.
    """
    validate_binary_response(d.response)
    return rank_sdi(d)


def rank_sis(d: Dataset) -> Ranking:
    """Rank variables by absolute marginal Pearson correlation with the response.

    Constant columns score 0; a constant response is an error.
    """
    if d.n < 2:
        raise ValueError(f"need at least 2 rows to rank, got {d.n}")
    y = d.response
    yc = y - y.mean()
    ss_y = float(np.square(yc).sum())
    if ss_y == 0.0:
        raise ZeroVarianceError("response variance is zero; correlations undefined")
    scores = np.empty(d.p, dtype=np.float64)
    for j in range(d.p):
        xc = d.column(j) - d.column(j).mean()
        ss_x = float(np.square(xc).sum())
        if ss_x == 0.0:
            scores[j] = 0.0
        else:
            scores[j] = abs(float(np.dot(xc, yc))) / math.sqrt(ss_x * ss_y)
    return Ranking(order=_rank_order(scores), scores=scores, method="sis")


def top_k(r: Ranking, k: int) -> SupportSet:
    """First ``k`` ranked variables as a support estimate."""
    p = r.order.shape[0]
    if not 1 <= k <= p:
        raise ValueError(f"k must be in [1, {p}], got {k}")
    return SupportSet(indices=frozenset(int(j) for j in r.order[:k]))
