"""Vectorized NumPy fallback for the split-scan kernel.

Mirrors the compiled kernel's contract exactly: same candidate set
(boundaries between distinct consecutive sorted values), same product-form
objective, same first-wins tie-break.  Prefix sums use ``np.cumsum`` instead
of compensated accumulation, so values may differ from the compiled path in
the last few ulps.
"""

import numpy as np


def best_split(xs: np.ndarray, ys: np.ndarray) -> tuple[int, float]:
    """Best boundary index and impurity reduction for a sorted column.

    See the compiled kernel for the contract.  Returns ``(-1, 0.0)`` when
    ``xs`` is constant.
    """
    n = xs.shape[0]
    valid = xs[:-1] < xs[1:]
    if not valid.any():
        return -1, 0.0
    prefix = np.cumsum(ys)
    total = prefix[-1]
    nl = np.arange(1, n, dtype=np.float64)
    nr = n - nl
    diff = prefix[:-1] / nl - (total - prefix[:-1]) / nr
    deltas = (nl / n) * (nr / n) * (diff * diff)
    deltas[~valid] = -1.0
    best = int(np.argmax(deltas))
    return best, float(deltas[best])
