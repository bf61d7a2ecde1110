"""Star-discrepancy and the pair-correlation discrepancy bound.

The star-discrepancy of ``x_1..x_N`` is

    D*_N = sup_{0 <= a <= 1} | A_N([0, a)) / N - a |,

``A_N([0, a))`` being the number of points below ``a``.  If the pair-count
deviation ``F(K, N) = max_{s <= K} |count(s) / (2s) - N|`` is small, then for
every large enough ``N`` and every ``K`` with

    min(N^{2/5} / 2, N / F(K^2, N)) <= K <= N^{2/5}

one has ``N * D*_N <= 5 * max(N^{4/5}, sqrt(N * F(K^2, N)))``.  This module
computes ``D*_N`` exactly, evaluates the right-hand side with the empirical
``F`` of a sample, and reports the comparison.  The bound is only claimed
beyond an unspecified sample size, so a failed comparison is a finding about
small ``N``, never a counterexample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .paircorr import PairCountTable, f_estimate, pair_counts_fast
from .sequences import SequenceSample

__all__ = [
    "MIN_BOUND_N",
    "DiscrepancyReport",
    "BoundCheck",
    "count_in_prefix_interval",
    "star_discrepancy_exact",
    "star_discrepancy_grid_oracle",
    "theorem_bound",
    "discrepancy_bound_for_eps",
    "k_upper",
    "k_lower_half",
    "k_feasible",
    "select_k",
    "select_K",
    "bound_check",
]

MIN_BOUND_N = 32
_GRID_NUDGE = 2.0 ** -40


@dataclass(frozen=True)
class DiscrepancyReport:
    """Exact star-discrepancy with an endpoint where the supremum is reached.

    ``witness_side`` is ``"left"`` when the deviation is attained at
    ``a = witness_a`` itself (points strictly below ``a`` are counted, so the
    count is the left limit) and ``"right"`` when it is only approached as
    ``a`` decreases to ``witness_a``.
    """

    n: int
    d_star: float
    witness_a: float
    witness_side: str

    @property
    def n_d_star(self) -> float:
        return self.n * self.d_star


@dataclass(frozen=True)
class BoundCheck:
    n: int
    k: int
    f_value: float
    h_value: float
    n_d_star: float
    satisfied: bool
    k_feasible: bool

    @property
    def verdict(self) -> str:
        if self.satisfied:
            return "satisfied"
        return "inconclusive (below unknown N0)"


def count_in_prefix_interval(sample: SequenceSample, a: float) -> int:
    """``A_N([0, a))``: number of points strictly below ``a``."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    return int(np.searchsorted(sample.sorted_values(), a, side="left"))


def star_discrepancy_exact(sample: SequenceSample) -> DiscrepancyReport:
    """Closed form over order statistics.

    With ``x_(1) <= ... <= x_(N)``::

        D* = max_i max(i/N - x_(i), x_(i) - (i-1)/N)

    Ties are harmless: the larger index of a tied run dominates the
    ``i/N - x`` term and the smaller one the ``x - (i-1)/N`` term.
    """
    xs = sample.sorted_values()
    n = xs.size
    if n == 0:
        raise ValueError("empty sample")
    i = np.arange(1, n + 1, dtype=np.float64)
    above = i / n - xs
    below = xs - (i - 1.0) / n
    ia = int(np.argmax(above))
    ib = int(np.argmax(below))
    if above[ia] >= below[ib]:
        return DiscrepancyReport(n, float(above[ia]), float(xs[ia]), "right")
    return DiscrepancyReport(n, float(below[ib]), float(xs[ib]), "left")


def star_discrepancy_grid_oracle(sample: SequenceSample, grid_points: int) -> float:
    """Lower estimate of ``D*`` from direct evaluation of ``|A_N([0,a))/N - a|``.

    ``a`` runs over the sample points, the points shifted by -/+ 2**-40, and
    the uniform grid ``j / grid_points``.  Every candidate is a genuine value
    of the deviation, so the result never exceeds the true supremum.
    """
    xs = sample.sorted_values()
    n = xs.size
    if grid_points < n:
        raise ValueError(f"grid_points must be >= N = {n}, got {grid_points}")
    cand = np.concatenate([
        xs,
        xs - _GRID_NUDGE,
        xs + _GRID_NUDGE,
        np.arange(grid_points + 1, dtype=np.float64) / grid_points,
    ])
    cand = cand[(cand >= 0.0) & (cand <= 1.0)]
    counts = np.searchsorted(xs, cand, side="left")
    return float(np.max(np.abs(counts / n - cand)))


def theorem_bound(n: int, f_value: float) -> float:
    """``5 * max(n^{4/5}, sqrt(n * f_value))``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not f_value >= 0:
        raise ValueError(f"f_value must be non-negative, got {f_value!r}")
    return 5.0 * max(n ** 0.8, math.sqrt(n * f_value))


def discrepancy_bound_for_eps(n: int, eps: float) -> float:
    """``D*_N`` bound when ``F(K^2, N) = eps * N``: ``5 * max(N^{-1/5}, sqrt(eps))``.

    Dividing the main bound by ``N`` gives this; it equals ``5 * sqrt(eps)``
    once ``N >= eps^{-5/2}``.  The natural ``K`` is ``floor(1 / eps^2)``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    return theorem_bound(n, eps * n) / n


def k_upper(n: int) -> int:
    """Largest integer ``K <= n^{2/5}``, i.e. with ``K^5 <= n^2`` (exact)."""
    k = int(n ** 0.4)
    while (k + 1) ** 5 <= n * n:
        k += 1
    while k > 0 and k ** 5 > n * n:
        k -= 1
    return k


def k_lower_half(n: int) -> int:
    """Smallest integer ``K >= n^{2/5} / 2``, i.e. with ``(2K)^5 >= n^2`` (exact)."""
    k = max(1, int(math.ceil(n ** 0.4 / 2)))
    while k > 1 and (2 * (k - 1)) ** 5 >= n * n:
        k -= 1
    while (2 * k) ** 5 < n * n:
        k += 1
    return k


def k_feasible(n: int, k: int, f_value: float) -> bool:
    """Whether ``min(n^{2/5}/2, n / f_value) <= k <= n^{2/5}``; ``n/0`` is +inf."""
    if k < 1 or k ** 5 > n * n:
        return False
    if (2 * k) ** 5 >= n * n:
        return True
    return f_value > 0 and n <= k * f_value


def select_k(n: int, f_of_k2: Callable[[int], float]) -> Tuple[int, bool]:
    """Smallest ``K`` in ``1..floor(n^{2/5})`` admissible for the given ``F``.

    ``f_of_k2(k)`` must return ``F(k^2, n)``.  ``K = ceil(n^{2/5} / 2)`` is
    always admissible, so the scan never needs ``F`` beyond that point.
    """
    if n < MIN_BOUND_N:
        raise ValueError(f"sample too small for the bound: N = {n} < {MIN_BOUND_N}")
    top = k_upper(n)
    for k in range(1, top + 1):
        if k_feasible(n, k, f_of_k2(k)):
            return k, True
    return top, False


def _table_for_scan(sample: SequenceSample) -> PairCountTable:
    n = sample.n
    k_stop = min(k_lower_half(n), k_upper(n))
    return pair_counts_fast(sample, min(k_stop * k_stop, n // 2))


def select_K(sample: SequenceSample, table: Optional[PairCountTable] = None) -> Tuple[int, bool]:
    """K-selection with the sample's own pair-count deviation as ``F``."""
    if sample.n < MIN_BOUND_N:
        raise ValueError(f"sample too small for the bound: N = {sample.n} < {MIN_BOUND_N}")
    table = table if table is not None else _table_for_scan(sample)
    return select_k(sample.n, lambda k: f_estimate(table, k * k).value)


def bound_check(sample: SequenceSample) -> BoundCheck:
    """Select ``K``, evaluate the bound with the empirical ``F(K^2, N)``, compare with ``N * D*``."""
    n = sample.n
    if n < MIN_BOUND_N:
        raise ValueError(f"sample too small for the bound: N = {n} < {MIN_BOUND_N}")
    table = _table_for_scan(sample)
    k, feasible = select_K(sample, table)
    f_value = f_estimate(table, k * k).value
    h_value = theorem_bound(n, f_value)
    rep = star_discrepancy_exact(sample)
    return BoundCheck(
        n=n,
        k=k,
        f_value=f_value,
        h_value=h_value,
        n_d_star=rep.n_d_star,
        satisfied=rep.n_d_star <= h_value,
        k_feasible=feasible,
    )
