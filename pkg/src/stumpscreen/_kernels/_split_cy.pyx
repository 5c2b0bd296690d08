# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled split-scan kernel.

Single pass over a pre-sorted column: prefix sums of the response with
Kahan compensation, impurity reduction in product form at every boundary
between distinct consecutive predictor values.
"""


def best_split(const double[::1] xs, const double[::1] ys):
    """Best boundary index and impurity reduction for a sorted column.

    ``xs`` must be sorted ascending; ``ys`` is the response in the same
    order.  A candidate boundary ``i`` puts rows ``0..i`` in the left node
    and requires ``xs[i] < xs[i+1]``, so tied predictor values always land
    on the same side.  Ties in the impurity reduction are broken toward
    the smallest split value (first candidate wins).

    Returns ``(i, delta)``, or ``(-1, 0.0)`` when the column is constant.
    """
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, best = -1
    cdef double nf = <double> n
    cdef double total = 0.0, comp = 0.0
    cdef double run = 0.0
    cdef double term, hold
    cdef double nl, nr, diff, delta
    cdef double best_delta = -1.0

    for i in range(n):
        term = ys[i] - comp
        hold = total + term
        comp = (hold - total) - term
        total = hold

    comp = 0.0
    for i in range(n - 1):
        term = ys[i] - comp
        hold = run + term
        comp = (hold - run) - term
        run = hold
        if xs[i] < xs[i + 1]:
            nl = <double> (i + 1)
            nr = nf - nl
            diff = run / nl - (total - run) / nr
            delta = (nl / nf) * (nr / nf) * (diff * diff)
            if delta > best_delta:
                best_delta = delta
                best = i

    if best < 0:
        return -1, 0.0
    return best, best_delta
