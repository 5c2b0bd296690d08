"""Exact optimal decision stumps for a single predictor column.

A decision stump splits the rows at a value ``z``: rows with ``x <= z`` go
left, the rest go right, and each node predicts its mean response.  The
impurity reduction of a split is the drop in within-node sum of squared
errors divided by ``n``; the best split maximizes it.  Splitting is only
allowed between distinct consecutive sorted predictor values, so tied
values always land in the same node and the fit is invariant under
strictly increasing transforms of the predictor.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidSplitError, ZeroVarianceError


@dataclass(frozen=True)
class StumpFit:
    """Optimal single split of one predictor against the response.

    ``delta`` is the impurity reduction, equal to
    ``(left_count/n) * (right_count/n) * (left_mean - right_mean)**2``.
    A constant predictor admits no split; the fit is then flagged
    ``degenerate`` with ``delta = 0``, ``split_value = nan`` and all rows
    counted left.
    """

    split_value: float
    left_mean: float
    right_mean: float
    left_count: int
    right_count: int
    delta: float
    degenerate: bool = False

    @property
    def n(self) -> int:
        return self.left_count + self.right_count


def _as_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    return arr


def _as_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    xv = _as_vector(x, "x")
    yv = _as_vector(y, "y")
    if xv.shape[0] != yv.shape[0]:
        raise ValueError(f"x has {xv.shape[0]} rows but y has {yv.shape[0]}")
    return xv, yv


def validate_binary_response(y) -> np.ndarray:
    """Check a 0/1-coded response and return it as a float array."""
    yv = _as_vector(y, "y")
    if not np.isin(yv, (0.0, 1.0)).all():
        bad = yv[~np.isin(yv, (0.0, 1.0))][0]
        raise ValueError(f"binary response contains value {bad!r} outside {{0, 1}}")
    return yv


def impurity_reduction_at_split(x, y, z: float) -> float:
    """Impurity reduction of the split ``x <= z`` via the sum-of-squares definition.

    Computes ``SSE(all)/n - SSE(left)/n - SSE(right)/n`` directly from the
    node means.  Raises :class:`InvalidSplitError` if either daughter node
    is empty.
    """
    xv, yv = _as_pair(x, y)
    left = xv <= z
    n_left = int(left.sum())
    if n_left == 0 or n_left == xv.shape[0]:
        raise InvalidSplitError(f"split at {z!r} leaves an empty daughter node")
    n = xv.shape[0]
    y_left = yv[left]
    y_right = yv[~left]
    total_sse = float(np.square(yv - yv.mean()).sum())
    left_sse = float(np.square(y_left - y_left.mean()).sum())
    right_sse = float(np.square(y_right - y_right.mean()).sum())
    return total_sse / n - left_sse / n - right_sse / n


def _degenerate_fit(yv: np.ndarray) -> StumpFit:
    mean = float(yv.mean())
    return StumpFit(
        split_value=math.nan,
        left_mean=mean,
        right_mean=mean,
        left_count=yv.shape[0],
        right_count=0,
        delta=0.0,
        degenerate=True,
    )


def fit_optimal_stump(x, y) -> StumpFit:
    """Fit the impurity-maximizing stump in one sort plus one linear scan.

    Candidate splits are the boundaries between distinct consecutive sorted
    predictor values; ties in the impurity reduction are broken toward the
    smallest split value.  A constant predictor yields a degenerate fit
    rather than an error so that ranking across many columns never aborts.
    """
    xv, yv = _as_pair(x, y)
    n = xv.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 rows to fit a stump, got {n}")
    order = np.argsort(xv, kind="stable")
    xs = np.ascontiguousarray(xv[order])
    ys = np.ascontiguousarray(yv[order])
    idx, delta = _kernels.best_split(xs, ys)
    if idx < 0:
        return _degenerate_fit(yv)
    left_count = idx + 1
    return StumpFit(
        split_value=float(xs[idx]),
        left_mean=float(ys[:left_count].mean()),
        right_mean=float(ys[left_count:].mean()),
        left_count=left_count,
        right_count=n - left_count,
        delta=delta,
    )


def brute_force_stump(x, y) -> StumpFit:
    """Reference fit that evaluates every distinct boundary independently.

    Quadratic-time oracle for :func:`fit_optimal_stump`: calls
    :func:`impurity_reduction_at_split` at each candidate boundary and keeps
    the argmax under the same smallest-split-value tie-break.  Exists to
    cross-check the scan kernel; do not use on large columns.
    """
    xv, yv = _as_pair(x, y)
    n = xv.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 rows to fit a stump, got {n}")
    candidates = np.unique(xv)[:-1]
    if candidates.size == 0:
        return _degenerate_fit(yv)
    best_z = None
    best_delta = -1.0
    for z in candidates:
        delta = impurity_reduction_at_split(xv, yv, z)
        if delta > best_delta:
            best_delta = delta
            best_z = float(z)
    left = xv <= best_z
    left_count = int(left.sum())
    return StumpFit(
        split_value=best_z,
        left_mean=float(yv[left].mean()),
        right_mean=float(yv[~left].mean()),
        left_count=left_count,
        right_count=n - left_count,
        delta=best_delta,
    )


def stump_correlation(fit: StumpFit, x, y) -> float:
    """Pearson correlation between the stump's predictions and the response.

    The squared value times the response variance recovers ``fit.delta``.
    Returns 0 when the stump predicts a constant (nothing explained);
    raises :class:`ZeroVarianceError` when the response is constant.
    """
    xv, yv = _as_pair(x, y)
    var_y = float(np.square(yv - yv.mean()).mean())
    if var_y == 0.0:
        raise ZeroVarianceError("response variance is zero; correlation undefined")
    if fit.degenerate or fit.left_mean == fit.right_mean:
        return 0.0
    predictions = np.where(xv <= fit.split_value, fit.left_mean, fit.right_mean)
    pc = predictions - predictions.mean()
    yc = yv - yv.mean()
    var_pred = float(np.square(pc).mean())
    if var_pred == 0.0:
        return 0.0
    corr = float((pc * yc).mean()) / math.sqrt(var_pred * var_y)
    return min(max(corr, 0.0), 1.0)
