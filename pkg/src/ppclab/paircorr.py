"""Close-pair counting on the circle and the pair-correlation deviation.

For a sample ``x_1..x_N`` and an integer ``s`` the central quantity is the
number of ordered pairs ``(l, m)``, ``l != m``, whose wrap distance
``||x_l - x_m||`` is strictly below ``s / N``.  For a sequence with Poissonian
pair correlations ``count(s) / N -> 2s``.

Three routes to the counts are provided:

* :func:`pair_count_bruteforce`, a direct transcription over all pairs, used
  as the oracle;
* :func:`pair_counts_fast` with ``method="direct"``: sort once, then walk the
  circular neighbourhood of every point and file each close pair under the
  smallest threshold it beats (O(N log N + N * s_max));
* ``method="hybrid"``: the same per-pair classification restricted to the
  pairs whose class is sensitive to rounding, with every other pair counted
  through FFT cross-correlations of cell-occupancy histograms.  Used
  automatically for large ``N * s_max``.

Every route compares ``min(|x - y|, 1 - |x - y|) < s / N`` in IEEE double
arithmetic, so they agree exactly, including on samples with exact ties such
as dyadic lattices.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .sequences import SequenceSample

__all__ = [
    "PairCountTable",
    "FEstimate",
    "wrap_distance",
    "pair_count_bruteforce",
    "pair_counts_bruteforce",
    "pair_count",
    "pair_counts_fast",
    "ppc_statistic",
    "f_estimate",
    "set_threads",
]

_HYBRID_MIN_WORK = 50_000_000
_HYBRID_MIN_N = 4096
_BRUTE_ROW_BLOCK = 512


def set_threads(n: Optional[int] = None) -> int:
    """Cap the number of worker threads used by the counting kernels.

    With ``n=None`` the cap is read from ``PPCLAB_THREADS``; unset means no
    cap beyond numba's own default.  Returns the thread count in effect.
    """
    import numba

    if n is None:
        env = os.environ.get("PPCLAB_THREADS")
        if not env:
            return numba.get_num_threads()
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"PPCLAB_THREADS must be an integer, got {env!r}") from None
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


@dataclass(frozen=True, eq=False)
class PairCountTable:
    """Ordered-pair counts ``counts[s]`` at thresholds ``s / n``.

    ``counts`` has length ``s_max + 1``; entry 0 is the (empty) count at
    threshold zero.
    """

    n: int
    counts: np.ndarray

    @property
    def s_max(self) -> int:
        return int(self.counts.size - 1)

    def count(self, s: int) -> int:
        if not 1 <= s <= self.s_max:
            raise KeyError(f"s={s} not in table (1..{self.s_max})")
        return int(self.counts[s])

    def deviations(self) -> np.ndarray:
        """``|count(s) / (2s) - N|`` for ``s = 1..s_max``."""
        s = np.arange(1, self.s_max + 1, dtype=np.float64)
        return np.abs(self.counts[1:] / (2.0 * s) - self.n)


@dataclass(frozen=True)
class FEstimate:
    """Smallest admissible ``F(k, n)`` for one sample: max deviation over ``s <= k``."""

    n: int
    k: int
    value: float
    argmax_s: int


def wrap_distance(x: float, y: float) -> float:
    """Distance to the nearest integer of ``x - y`` for ``x, y`` in [0, 1)."""
    for v in (x, y):
        if not 0.0 <= v < 1.0:
            raise ValueError(f"wrap_distance expects values in [0, 1), got {v!r}")
    d = abs(x - y)
    return min(d, 1.0 - d)


def _brute_rows(x, thresholds):
    n = x.size
    out = np.zeros(len(thresholds), dtype=np.int64)
    t_top = max(thresholds)
    for lo in range(0, n, _BRUTE_ROW_BLOCK):
        rows = x[lo:lo + _BRUTE_ROW_BLOCK, None]
        d = np.abs(rows - x[None, :])
        w = np.minimum(d, 1.0 - d)
        # one full pass against the largest threshold, then the survivors
        w = w[w < t_top]
        for k, t in enumerate(thresholds):
            out[k] += np.count_nonzero(w < t)
    # the diagonal (l == m) has w = 0 and beats every positive threshold
    return out - n


def pair_count_bruteforce(sample: SequenceSample, t: float) -> int:
    """Ordered pairs ``l != m`` with ``||x_l - x_m|| < t``, by checking all of them."""
    if not t > 0:
        raise ValueError(f"threshold must be positive, got {t!r}")
    return int(_brute_rows(sample.values, [float(t)])[0])


def pair_counts_bruteforce(sample: SequenceSample, s_max: int) -> np.ndarray:
    """Oracle table: counts at ``s / N`` for ``s = 0..s_max`` via all N^2 pairs."""
    n = sample.n
    thresholds = [s / n for s in range(1, s_max + 1)]
    return np.concatenate([[0], _brute_rows(sample.values, thresholds)])


def _ladder(n: int, s_max: int) -> np.ndarray:
    thr = np.arange(s_max + 2, dtype=np.float64) / n
    thr[0] = -1.0
    thr[-1] = np.inf
    return thr


def _fast_len(m: int) -> int:
    """Smallest 5-smooth integer >= m (cheap FFT sizes)."""
    best = 1 << max(0, (m - 1).bit_length())
    p5 = 1
    while p5 < best:
        p35 = p5
        while p35 < best:
            q = p35
            while q < m:
                q *= 2
            best = min(best, q)
            p35 *= 3
        p5 *= 5
    return best


def _hybrid_unordered(xs: np.ndarray, n: int, s_max: int) -> np.ndarray:
    """Unordered class histogram (index = class) via FFT plus exact fix-ups.

    Scale each point to ``u = n * x`` and split into cell ``c = floor(u)`` and
    offset ``f = u - c``; bucket ``f`` into ``B`` levels.  For two points in
    different levels, neither of them within ``eta`` of a level edge, the
    sign of ``f_j - f_i`` is beyond doubt and the class of the pair is fixed
    by the cell lag alone: lag ``d`` with ``f_j > f_i`` is class ``d + 1``,
    with ``f_j < f_i`` it is class ``d``.  Those pairs are tallied with one
    cross-correlation per level.  Pairs sharing a level, and pairs touching a
    point near a level edge, are classified one by one in double precision.

    ``eta`` dominates the rounding in ``u`` (``n * 2**-53``) and in the
    threshold ladder, so the bulk tally never disagrees with the per-pair
    comparison.
    """
    thr = _ladder(n, s_max)
    levels = int(2 ** round(math.log2(max(4.0, math.sqrt(s_max / 5.0)))))
    levels = min(256, max(4, levels))
    eta = 16.0 * n * 2.0 ** -52

    u = xs * n
    cell = np.floor(u)
    f = u - cell
    cell = cell.astype(np.int64) % n
    fb = f * levels
    fuzzy = np.abs(fb - np.rint(fb)) < eta * levels
    level = np.minimum(fb.astype(np.int64), levels - 1)

    hist = _kernels.marked_hist(xs, fuzzy, thr, float(n)).copy()

    clean = ~fuzzy
    for a in range(levels):
        sub = xs[clean & (level == a)]
        if sub.size > 1:
            hist += _kernels.direct_hist(np.ascontiguousarray(sub), thr, float(n))

    # ordered pairs (i, j) with level_j > level_i, by cyclic cell lag c_j - c_i
    length = _fast_len(2 * n)
    acc = np.zeros(length // 2 + 1, dtype=np.complex128)
    above = np.zeros(length // 2 + 1, dtype=np.complex128)
    occupied = 0
    for a in range(levels - 1, -1, -1):
        sel = clean & (level == a)
        if not sel.any():
            continue
        spectrum = np.fft.rfft(np.bincount(cell[sel], minlength=n).astype(np.float64), length)
        if occupied:
            acc += np.conj(spectrum) * above
        above += spectrum
        occupied += 1
    lin = np.fft.irfft(acc, length)
    # cyclic lag d collects linear lags d and d - n
    cyc = lin[:n].copy()
    cyc[1:] += lin[length - n + 1:]
    rounded = np.rint(cyc)
    if cyc.size and np.max(np.abs(cyc - rounded)) > 0.25:
        raise FloatingPointError("FFT correlation lost integer precision")
    lags = rounded.astype(np.int64)

    s = np.arange(1, s_max + 1)
    hist[1:s_max + 1] += lags[s - 1] + lags[(n - s) % n]
    return hist


def pair_counts_fast(sample: SequenceSample, s_max: int, method: str = "auto") -> PairCountTable:
    """Counts at every threshold ``s / N``, ``s = 1..s_max``, in one pass.

    Parameters
    ----------
    sample : SequenceSample
    s_max : int
        Largest threshold index; must satisfy ``1 <= s_max <= N / 2``.
    method : {"auto", "direct", "hybrid"}
        ``auto`` picks ``hybrid`` once ``N * s_max`` is large.

    Returns
    -------
    PairCountTable
    """
    n = sample.n
    if isinstance(s_max, bool) or int(s_max) != s_max or not 1 <= s_max <= n / 2:
        raise ValueError(f"s_max must be an integer in [1, N/2] = [1, {n / 2}], got {s_max!r}")
    s_max = int(s_max)
    if method == "auto":
        big = n * s_max >= _HYBRID_MIN_WORK and n >= _HYBRID_MIN_N
        method = "hybrid" if big else "direct"
    xs = np.ascontiguousarray(sample.sorted_values())
    if method == "direct":
        hist = _kernels.direct_hist(xs, _ladder(n, s_max), float(n))
    elif method == "hybrid":
        hist = _hybrid_unordered(xs, n, s_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    counts = np.zeros(s_max + 1, dtype=np.int64)
    counts[1:] = 2 * np.cumsum(hist[1:s_max + 1])
    counts.flags.writeable = False
    return PairCountTable(n=n, counts=counts)


def pair_count(sample: SequenceSample, t: float) -> int:
    """Ordered close-pair count at an arbitrary threshold ``t > 0`` (fast path).

    Thresholds above 1/2 exceed every wrap distance and return ``N(N-1)``.
    """
    if not t > 0:
        raise ValueError(f"threshold must be positive, got {t!r}")
    n = sample.n
    if t > 0.5:
        return n * (n - 1)
    xs = np.ascontiguousarray(sample.sorted_values())
    return 2 * int(_kernels.count_in_circular_window(xs, float(t)))


def ppc_statistic(table: PairCountTable, s: int) -> float:
    """Normalised count ``count(s) / N``; tends to ``2s`` under Poissonian pair correlations."""
    return table.count(s) / table.n


def f_estimate(table: PairCountTable, k: int) -> FEstimate:
    """``max_{s=1..k} |count(s) / (2s) - N|``."""
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= table.s_max:
        raise ValueError(f"k must be in [1, {table.s_max}], got {k!r}")
    dev = table.deviations()[:int(k)]
    idx = int(np.argmax(dev))
    return FEstimate(n=table.n, k=int(k), value=float(dev[idx]), argmax_s=idx + 1)
