"""Data-driven support-size selection when the sparsity level is unknown.

Two rules are provided.  The permutation rule decouples predictors from the
response by permuting predictor rows and takes the largest impurity
reduction seen on any permuted dataset as the cutoff.  The elbow rule
clusters the importance scores with a one-dimensional two-component
Gaussian mixture and keeps the higher-mean cluster.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NoElbowError
from .screening import Dataset, SupportSet, rank_sdi

EM_TOL = 1e-9
EM_MAX_ITER = 500
VARIANCE_FLOOR_SCALE = 1e-12


@dataclass(frozen=True)
class MixtureFit:
    """Converged two-component 1-D Gaussian mixture.

    ``log_likelihood_trace`` holds the observed-data log-likelihood at each
    EM iteration (non-decreasing); ``log_likelihood`` is its last entry.
    """

    means: tuple[float, float]
    variances: tuple[float, float]
    weights: tuple[float, float]
    log_likelihood: float
    iterations: int
    log_likelihood_trace: tuple[float, ...]


@dataclass(frozen=True)
class ThresholdDecision:
    """Selected support plus the cutoff that produced it.

    ``selected`` always equals the at-least-``gamma`` filter of ``scores``.
    For the permutation rule ``permutation_maxima[t]`` is the largest
    impurity reduction on the ``t``-th permuted dataset; for the elbow rule
    ``mixture`` carries the fitted score clusters.
    """

    gamma: float
    selected: SupportSet
    method: str
    scores: np.ndarray
    mixture: MixtureFit | None = None
    permutation_maxima: np.ndarray | None = None


def _as_scores(scores) -> np.ndarray:
    arr = np.asarray(scores, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"scores must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise ValueError(f"need at least 2 scores, got {arr.shape[0]}")
    if not np.isfinite(arr).all():
        raise ValueError("scores contain non-finite values")
    return arr


def _gap_cut(sorted_x: np.ndarray, seed: int) -> int:
    """Index of the left endpoint of the largest consecutive gap.

    Deterministic; the seed only disambiguates exactly tied gaps.
    """
    gaps = np.diff(sorted_x)
    ties = np.flatnonzero(gaps == gaps.max())
    if ties.shape[0] == 1:
        return int(ties[0])
    return int(np.random.default_rng(seed).choice(ties))


def _log_density(x: np.ndarray, mean: float, var: float) -> np.ndarray:
    return -0.5 * (np.square(x - mean) / var + math.log(2.0 * math.pi * var))


def _e_step(x, means, variances, weights):
    log_a = math.log(weights[0]) + _log_density(x, means[0], variances[0])
    log_b = math.log(weights[1]) + _log_density(x, means[1], variances[1])
    log_norm = np.logaddexp(log_a, log_b)
    resp = np.exp(log_b - log_norm)  # responsibility of component 1
    return resp, float(log_norm.sum())


def gmm_em(scores, seed: int = 0) -> MixtureFit:
    """EM fit of a two-component Gaussian mixture to 1-D scores.

    Initialization splits the sorted scores at the largest consecutive gap
    and seeds each component from its side.  Variances are floored at
    ``1e-12`` times the squared score range so a component cannot collapse
    onto a single point.  Stops when the log-likelihood improves by less
    than ``1e-9`` or after 500 iterations.
    """
    x = _as_scores(scores)
    if np.all(x == x[0]):
        raise NoElbowError("all scores are identical; mixture fit is degenerate")
    xs = np.sort(x)
    floor = max(VARIANCE_FLOOR_SCALE * (xs[-1] - xs[0]) ** 2, np.finfo(np.float64).tiny)
    cut = _gap_cut(xs, seed)
    low, high = xs[: cut + 1], xs[cut + 1 :]
    means = np.array([low.mean(), high.mean()])
    variances = np.array([max(low.var(), floor), max(high.var(), floor)])
    weights = np.array([low.size / x.size, high.size / x.size])

    trace = []
    previous = -math.inf
    iterations = 0
    for iterations in range(1, EM_MAX_ITER + 1):
        resp1, ll = _e_step(x, means, variances, weights)
        trace.append(ll)
        if ll - previous < EM_TOL:
            break
        previous = ll
        resp = np.stack([1.0 - resp1, resp1])
        for k in (0, 1):
            nk = float(resp[k].sum())
            if nk > 0.0:
                means[k] = float((resp[k] * x).sum()) / nk
                variances[k] = max(
                    float((resp[k] * np.square(x - means[k])).sum()) / nk, floor
                )
            weights[k] = nk / x.size

    return MixtureFit(
        means=(float(means[0]), float(means[1])),
        variances=(float(variances[0]), float(variances[1])),
        weights=(float(weights[0]), float(weights[1])),
        log_likelihood=trace[-1],
        iterations=iterations,
        log_likelihood_trace=tuple(trace),
    )


def elbow_threshold(scores, seed: int = 0) -> ThresholdDecision:
    """Select the higher-mean score cluster of a two-component mixture.

    Scores are assigned to the component with the larger posterior
    responsibility; the cutoff is the midpoint between the largest
    low-cluster score and the smallest high-cluster score.  If the
    posterior assignment is empty on one side or straddles (possible with
    very unequal component variances), selection falls back to the
    largest-gap partition so both clusters stay non-empty and contiguous.
    """
    x = _as_scores(scores)
    if (x < 0).any():
        raise ValueError("scores must be non-negative")
    if np.all(x == x[0]):
        raise NoElbowError("all scores are identical; no elbow to find")
    mixture = gmm_em(x, seed)
    hi = int(np.argmax(mixture.means))
    resp1, _ = _e_step(x, mixture.means, mixture.variances, mixture.weights)
    resp_hi = resp1 if hi == 1 else 1.0 - resp1
    assign_hi = resp_hi >= 0.5
    if assign_hi.all() or not assign_hi.any():
        xs = np.sort(x)
        assign_hi = x > xs[_gap_cut(xs, seed)]
    cutoff = float(x[assign_hi].min())
    below = x[x < cutoff]
    if below.size == 0:
        gamma = cutoff
    else:
        gamma = (float(below.max()) + cutoff) / 2.0
        if gamma <= float(below.max()):  # adjacent floats: keep the filter exact
            gamma = cutoff
    selected = frozenset(int(j) for j in np.flatnonzero(x >= gamma))
    return ThresholdDecision(
        gamma=gamma,
        selected=SupportSet(indices=selected),
        method="elbow",
        scores=x,
        mixture=mixture,
    )


def permutation_threshold(d: Dataset, permutations: int = 10, seed: int = 0) -> ThresholdDecision:
    """Null cutoff from row-permuted predictors.

    Each draw applies one random permutation to the predictor rows (jointly
    across columns), which decouples them from the response; the cutoff is
    the largest impurity reduction over all variables and all permuted
    datasets.  Variables whose original impurity reduction reaches the
    cutoff are selected.  Permutations are drawn sequentially from the
    seeded generator, so a larger ``permutations`` extends the same stream
    and can only raise the cutoff.
    """
    if permutations < 1:
        raise ValueError(f"permutations must be >= 1, got {permutations}")
    if d.n < 2:
        raise ValueError(f"need at least 2 rows, got {d.n}")
    scores = rank_sdi(d).scores
    y = d.response
    sort_idx = [np.argsort(d.column(j), kind="stable") for j in range(d.p)]
    sorted_x = [np.ascontiguousarray(d.column(j)[idx]) for j, idx in enumerate(sort_idx)]

    rng = np.random.default_rng(seed)
    maxima = np.empty(permutations, dtype=np.float64)
    for t in range(permutations):
        perm = rng.permutation(d.n)
        # pairing x-row k with y[inverse_perm[k]] reproduces the permuted
        # dataset without re-sorting any column
        inverse = np.argsort(perm)
        best = 0.0
        for j in range(d.p):
            ys = np.ascontiguousarray(y[inverse[sort_idx[j]]])
            _, delta = _kernels.best_split(sorted_x[j], ys)
            if delta > best:
                best = delta
        maxima[t] = best
    gamma = float(maxima.max())
    selected = frozenset(int(j) for j in np.flatnonzero(scores >= gamma))
    return ThresholdDecision(
        gamma=gamma,
        selected=SupportSet(indices=selected),
        method="permutation",
        scores=scores,
        permutation_maxima=maxima,
    )
