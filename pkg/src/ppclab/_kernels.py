"""Compiled pair-classification kernels.

All kernels work on an ascending array ``xs`` and a threshold ladder ``thr``
laid out as ``thr[0] = -1`` (sentinel), ``thr[s]`` for ``s = 1..S`` and
``thr[S + 1] = +inf`` (sentinel).  An unordered pair with wrap distance ``w``
has class ``s`` when ``thr[s - 1] <= w < thr[s]``; pairs with ``w >= thr[S]``
are ignored.  The wrap distance is evaluated exactly as
``min(|x - y|, 1 - |x - y|)`` in double precision, the same expression the
brute-force oracle uses, so class boundaries agree bit for bit.
"""

import numpy as np
from numba import config, njit, prange

# the system TBB is too old for numba; try OpenMP, then the builtin pool
config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

# chunks handed to prange; results are summed as integers so the split does
# not affect the output
_CHUNKS = 64


@njit(cache=True, inline="always")
def _classify(w, thr, scale, S):
    s = int(w * scale) + 1
    if s > S + 1:
        s = S + 1
    elif s < 1:
        s = 1
    while w >= thr[s]:
        s += 1
    while w < thr[s - 1]:
        s -= 1
    return s


@njit(cache=True)
def _hist_range(xs, thr, scale, lo, hi, h):
    S = thr.shape[0] - 2
    T = thr[S]
    m = xs.shape[0]
    for i in range(lo, hi):
        xi = xs[i]
        j = i + 1
        while j < m:
            w = xs[j] - xi
            if w >= T:
                break
            h[_classify(w, thr, scale, S)] += 1
            j += 1
        jf = j
        j = m - 1
        while j >= jf:
            w = 1.0 - (xs[j] - xi)
            if w >= T:
                break
            h[_classify(w, thr, scale, S)] += 1
            j -= 1


@njit(cache=True, parallel=True)
def direct_hist(xs, thr, scale):
    """Class histogram over all unordered pairs of ``xs`` (index = class)."""
    m = xs.shape[0]
    S = thr.shape[0] - 2
    nchunks = min(_CHUNKS, max(m, 1))
    rows = np.zeros((nchunks, S + 2), dtype=np.int64)
    step = (m + nchunks - 1) // nchunks
    for c in prange(nchunks):
        lo = c * step
        hi = min(m, lo + step)
        if lo < hi:
            _hist_range(xs, thr, scale, lo, hi, rows[c])
    out = np.zeros(S + 2, dtype=np.int64)
    for c in range(nchunks):
        out += rows[c]
    return out


@njit(cache=True)
def marked_hist(xs, marked, thr, scale):
    """Class histogram over unordered pairs with at least one marked endpoint.

    ``marked`` is aligned with ``xs``.  A marked-marked pair is counted once,
    from its lower index; an unmarked partner is counted from the marked side.
    """
    S = thr.shape[0] - 2
    T = thr[S]
    m = xs.shape[0]
    h = np.zeros(S + 2, dtype=np.int64)
    for p in range(m):
        if not marked[p]:
            continue
        xp = xs[p]
        j = p + 1
        while j < m:
            w = xs[j] - xp
            if w >= T:
                break
            h[_classify(w, thr, scale, S)] += 1
            j += 1
        jf = j
        j = m - 1
        while j >= jf:
            w = 1.0 - (xs[j] - xp)
            if w >= T:
                break
            h[_classify(w, thr, scale, S)] += 1
            j -= 1
        j = p - 1
        while j >= 0:
            w = xp - xs[j]
            if w >= T:
                break
            if not marked[j]:
                h[_classify(w, thr, scale, S)] += 1
            j -= 1
        jb = j
        j = 0
        while j <= jb:
            w = 1.0 - (xp - xs[j])
            if w >= T:
                break
            if not marked[j]:
                h[_classify(w, thr, scale, S)] += 1
            j += 1
    return h


@njit(cache=True)
def count_in_circular_window(xs, t):
    """Unordered pairs of ``xs`` with wrap distance ``< t`` (requires t <= 1/2)."""
    m = xs.shape[0]
    total = 0
    for i in range(m):
        xi = xs[i]
        j = i + 1
        while j < m and xs[j] - xi < t:
            j += 1
        total += j - i - 1
        jf = j
        j = m - 1
        while j >= jf and 1.0 - (xs[j] - xi) < t:
            j -= 1
        total += m - 1 - j
    return total
