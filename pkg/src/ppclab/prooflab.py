"""Bin profiles, window moments and the two-block minimiser on concrete data.

The bound on ``N * D*_N`` is proved by cutting [0, 1) into bins of width
``K / N`` and comparing the close-pair counts with second moments of bin
counts over circular windows.  This module computes all of those quantities
for an actual sample so that every step can be checked numerically:

* ``A_i``: bin counts, ``i = 0..floor(N/K)``; the last bin is the remainder
  ``[floor(N/K) K / N, 1)`` (empty and of zero width when ``K | N``); indices
  wrap modulo ``floor(N/K) + 1``.
* ``G_i = A_i + ... + A_{i+L-1}``: circular window sums.
* ``Z_L = sum_i G_i^2 / (2 L K N)`` and
  ``gamma_L = sum_i (G_i^2 - (A_{i+1} + ... + A_{i+L-1})^2) / (2 L K N)``;
  ``gamma_L = Z_L - (L-1)/L * Z_{L-1}`` with no ``Z_0`` term at ``L = 1``.
* ``H_L``: ordered pairs closer than ``L K / N``; every pair of points in
  bins at most ``L - 1`` apart is such a pair, so
  ``H_L >= 2 L K N gamma_L - N``.

Real-valued identities are checked to a relative tolerance of 1e-12;
integer identities are exact.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .discrepancy import k_feasible, star_discrepancy_exact, theorem_bound
from .paircorr import PairCountTable, f_estimate, pair_count, pair_counts_fast
from .sequences import SequenceSample

__all__ = [
    "REL_TOL",
    "InfeasibleError",
    "BinProfile",
    "WindowStats",
    "ChainBound",
    "MinimizerBlocks",
    "MinimizerVerification",
    "Check",
    "ChainReport",
    "bin_counts",
    "window_sums",
    "h_count",
    "window_stats",
    "profile_stats",
    "chain_lower_bound",
    "minimizer_blocks",
    "full_index_minimum",
    "verify_minimizer",
    "project_minimizer",
    "final_chain_report",
]

REL_TOL = 1e-12


class InfeasibleError(ValueError):
    """Parameters violate a precondition of the minimiser or the K window."""


@dataclass(frozen=True, eq=False)
class BinProfile:
    n: int
    k: int
    bins: np.ndarray
    bin_width: float

    @property
    def size(self) -> int:
        return int(self.bins.size)

    def at(self, index: int) -> int:
        """Bin count with circular indexing, any integer index."""
        return int(self.bins[index % self.size])


@dataclass(frozen=True, eq=False)
class WindowStats:
    profile: BinProfile
    L: int
    G: np.ndarray
    z: float
    z_prev: float
    gamma: float
    gamma_telescoped: float
    h_count: int
    pair_lower_bound: int

    @property
    def window_total(self) -> int:
        return int(self.G.sum())


@dataclass(frozen=True)
class ChainBound:
    max_term: float
    argmax_L: int
    bound: float
    holds: bool


@dataclass(frozen=True)
class MinimizerBlocks:
    n: int
    k: int
    b: float
    h: float
    g_low: float
    g_high: float
    low_count: int
    high_count: int
    objective: float
    unblocked_index: int


@dataclass(frozen=True)
class MinimizerVerification:
    blocks: MinimizerBlocks
    trials: int
    counterexamples: int
    min_ratio: float
    projected_low: float
    projected_high: float
    projection_rel_error: float
    descent_improvement: float
    full_index_minimum: float

    @property
    def ok(self) -> bool:
        return self.counterexamples == 0 and self.projection_rel_error <= 1e-6


@dataclass(frozen=True)
class Check:
    name: str
    lhs: float
    rhs: float
    relation: str
    holds: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
             "relation": self.relation, "holds": self.holds}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ChainReport:
    n: int
    k: int
    f_value: float
    h_value: float
    n_d_star: float
    checks: List[Check] = field(default_factory=list)

    def add(self, name, lhs, rhs, relation, note=""):
        holds = _compare(lhs, rhs, relation)
        self.checks.append(Check(name, _num(lhs), _num(rhs), relation, holds, note))

    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.holds]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "f_value": self.f_value,
            "h_value": self.h_value,
            "n_d_star": self.n_d_star,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _num(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    return float(v)


def _compare(lhs, rhs, relation: str) -> bool:
    # integers compare exactly; floats get REL_TOL of slack on non-strict relations
    exact = all(isinstance(v, (int, np.integer)) for v in (lhs, rhs))
    slack = 0.0 if exact else REL_TOL * max(abs(float(lhs)), abs(float(rhs)), 1e-300)
    if relation == "<=":
        return lhs <= rhs + slack
    if relation == ">=":
        return lhs + slack >= rhs
    if relation == "<":
        return lhs < rhs
    if relation == ">":
        return lhs > rhs
    if relation == "==":
        return abs(lhs - rhs) <= slack
    raise ValueError(f"unknown relation {relation!r}")


def bin_counts(sample: SequenceSample, k: int) -> BinProfile:
    """Counts in ``[i K/N, (i+1) K/N)`` for ``i < floor(N/K)`` plus the remainder bin."""
    n = sample.n
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= n / 2:
        raise ValueError(f"k must be an integer in [1, N/2] = [1, {n / 2}], got {k!r}")
    k = int(k)
    m = n // k + 1
    edges = (np.arange(m, dtype=np.float64) * k) / n
    idx = np.searchsorted(edges, sample.values, side="right") - 1
    bins = np.bincount(idx, minlength=m).astype(np.int64)
    bins.flags.writeable = False
    return BinProfile(n=n, k=k, bins=bins, bin_width=k / n)


def window_sums(bins: np.ndarray, L: int, start: int = 0) -> np.ndarray:
    """``G_i = A_{i+start} + ... + A_{i+start+L-1}`` (circular) for every bin ``i``."""
    a = np.asarray(bins, dtype=np.int64)
    m = a.size
    if L <= 0:
        return np.zeros(m, dtype=np.int64)
    reps = (start + L) // m + 2
    c = np.concatenate([[0], np.cumsum(np.tile(a, reps))])
    i = np.arange(m) + start % m
    return c[i + L] - c[i]


def h_count(sample: SequenceSample, k: int, L: int) -> int:
    """Ordered pairs with wrap distance below ``L K / N``."""
    if not 1 <= L <= k:
        raise ValueError(f"L must lie in [1, k] = [1, {k}], got {L}")
    t = (L * k) / sample.n
    if t > 0.5:
        warnings.warn(f"threshold L*K/N = {t:.6g} exceeds 1/2; every pair qualifies",
                      RuntimeWarning, stacklevel=2)
    return pair_count(sample, t)


def _h_from(sample, table, k, L):
    s = L * k
    if table is not None and s <= table.s_max:
        return table.count(s)
    return pair_count(sample, s / sample.n)


def window_stats(profile: BinProfile, L: int, sample: SequenceSample,
                 table: Optional[PairCountTable] = None) -> WindowStats:
    """Window sums, ``Z_L``, ``gamma_L`` (both ways) and ``H_L`` for one ``L``."""
    k, n = profile.k, profile.n
    if not 1 <= L <= k:
        raise ValueError(f"L must lie in [1, K] = [1, {k}], got {L}")
    G = window_sums(profile.bins, L)
    inner = window_sums(profile.bins, L - 1, start=1)
    sq = int(np.dot(G, G))
    sq_inner = int(np.dot(inner, inner))
    prev = window_sums(profile.bins, L - 1)
    sq_prev = int(np.dot(prev, prev))

    z = sq / (2 * L * k * n)
    z_prev = sq_prev / (2 * (L - 1) * k * n) if L > 1 else 0.0
    gamma = (sq - sq_inner) / (2 * L * k * n)
    gamma_tel = z - (L - 1) / L * z_prev if L > 1 else z
    return WindowStats(
        profile=profile,
        L=L,
        G=G,
        z=z,
        z_prev=z_prev,
        gamma=gamma,
        gamma_telescoped=gamma_tel,
        h_count=_h_from(sample, table, k, L),
        pair_lower_bound=sq - sq_inner - n,
    )


def profile_stats(sample: SequenceSample, k: int,
                  table: Optional[PairCountTable] = None) -> List[WindowStats]:
    """:func:`window_stats` for ``L = 1..k`` sharing one bin profile and count table."""
    profile = bin_counts(sample, k)
    if table is None and k * k <= sample.n // 2:
        table = pair_counts_fast(sample, k * k)
    return [window_stats(profile, L, sample, table) for L in range(1, k + 1)]


def chain_lower_bound(z_values: Sequence[float]) -> ChainBound:
    """``max(Z_1, Z_2 - Z_1/2, ..., Z_K - (K-1)/K Z_{K-1})`` against ``2 Z_K / (K+1)``.

    If every term were below ``c = 2 Z_K / (K+1)``, unrolling
    ``L Z_L < L c + (L-1) Z_{L-1}`` would give ``Z_K < Z_K``.
    """
    z = np.asarray(z_values, dtype=np.float64)
    if z.size < 1:
        raise ValueError("need at least Z_1")
    K = z.size
    L = np.arange(1, K + 1, dtype=np.float64)
    prev = np.concatenate([[0.0], z[:-1]])
    terms = z - (L - 1.0) / L * prev
    j = int(np.argmax(terms))
    bound = 2.0 * z[-1] / (K + 1)
    top = float(terms[j])
    holds = _compare(top, float(bound), ">=")
    return ChainBound(max_term=top, argmax_L=j + 1, bound=float(bound), holds=holds)


def _block_layout(n: int, k: int, b: float, h: float):
    if not 0.0 < b < 1.0:
        raise InfeasibleError(f"B must lie in (0, 1), got {b}")
    if not n - n * b - h > 0:
        raise InfeasibleError(f"N - N*B - H = {n - n * b - h:.6g} is not positive")
    if not k * k <= h / 5:
        raise InfeasibleError(f"K^2 = {k * k} exceeds H/5 = {h / 5:.6g}")
    p = math.floor(n * b / k)
    low = k + p
    high = n // k - k - p
    if high <= 0:
        raise InfeasibleError(f"upper block is empty (floor(N/K) - K - floor(NB/K) = {high})")
    return p, low, high


def minimizer_blocks(n: int, k: int, b: float, h: float) -> MinimizerBlocks:
    """Two-block configuration of window sums.

    Lower block, indices ``-K+1..floor(NB/K)``, carries total ``K(NB + H)``;
    upper block, ``floor(NB/K)+1..floor(N/K)-K``, carries ``K(N(1-B) - H)``;
    each is spread evenly.  Index ``floor(N/K) - K + 1`` belongs to neither
    block and holds zero.
    """
    p, low, high = _block_layout(n, k, b, h)
    s_low = k * (n * b + h)
    s_high = k * (n * (1 - b) - h)
    g_low = s_low / low
    g_high = s_high / high
    return MinimizerBlocks(
        n=n, k=k, b=b, h=h,
        g_low=g_low, g_high=g_high,
        low_count=low, high_count=high,
        objective=low * g_low ** 2 + high * g_high ** 2,
        unblocked_index=n // k - k + 1,
    )


def full_index_minimum(n: int, k: int, b: float, h: float) -> float:
    """Minimum of ``sum G_i^2`` when the unblocked index may also carry mass.

    The lower-block constraint binds, and the remaining ``K(N(1-B) - H)`` is
    spread over the upper block and the unblocked index together, which is
    strictly below the two-block objective.
    """
    _, low, high = _block_layout(n, k, b, h)
    s_low = k * (n * b + h)
    s_rest = k * n - s_low
    return s_low ** 2 / low + s_rest ** 2 / (high + 1)


def project_minimizer(low: int, high: int, s_low: float, total: float,
                      iters: int = 200_000, tol: float = 1e-14,
                      extra: int = 0) -> np.ndarray:
    """Closest point to the origin of the block constraint set (Dykstra's method).

    The set is ``G >= 0``, ``sum(G[:low]) >= s_low``,
    ``sum(G[low:]) <= total - s_low`` and ``sum(G) = total``; its point of
    least norm minimises ``sum G^2``.  Alternating projections with Dykstra's
    corrections converge to that point rather than merely into the set.
    ``extra`` appends free coordinates bound only by ``G >= 0`` and the total,
    e.g. the index left out of both blocks.
    """
    dim = low + high + extra
    x = np.zeros(dim)
    corr = np.zeros((4, dim))
    s_high = total - s_low
    scale = max(total, 1.0)

    def proj(i, y):
        if i == 0:
            return np.maximum(y, 0.0)
        if i == 1:
            gap = s_low - y[:low].sum()
            if gap > 0:
                y = y.copy()
                y[:low] += gap / low
            return y
        if i == 2:
            over = y[low:].sum() - s_high
            if over > 0:
                y = y.copy()
                y[low:] -= over / (dim - low)
            return y
        return y + (total - y.sum()) / dim

    for _ in range(iters):
        before = x
        for i in range(4):
            y = proj(i, x + corr[i])
            corr[i] = x + corr[i] - y
            x = y
        if np.max(np.abs(x - before)) <= tol * scale:
            break
    return x


def _descend(x, low, s_low, total, rng, rounds=2000):
    """Random sum-preserving transfers; keeps any that lower ``sum G^2`` and stay feasible."""
    best = float(np.dot(x, x))
    start = best
    dim = x.size
    step = max(total, 1.0) * 1e-3
    for r in range(rounds):
        i, j = rng.choice(dim, size=2, replace=False)
        d = step * rng.standard_normal()
        y = x.copy()
        y[i] += d
        y[j] -= d
        if y[i] < 0 or y[j] < 0 or y[:low].sum() < s_low * (1 - REL_TOL):
            continue
        val = float(np.dot(y, y))
        if val < best:
            x, best = y, val
        if r % 200 == 199:
            step *= 0.5
    return x, start - best


def verify_minimizer(n: int, k: int, b: float, h: float, trials: int = 10_000,
                     seed: int = 0) -> MinimizerVerification:
    """Check the two-block configuration against random feasible vectors and a projection.

    Vectors live on the two blocks with ``sum G = K N``, lower-block sum at
    least ``K(NB + H)`` and hence upper-block sum at most ``K(N(1-B) - H)``.
    Block totals are drawn uniformly in their feasible range and split with
    Dirichlet weights whose concentration ranges from spiky to nearly flat,
    so some draws land close to the optimum.
    """
    blocks = minimizer_blocks(n, k, b, h)
    low, high = blocks.low_count, blocks.high_count
    s_low = k * (n * b + h)
    total = float(k * n)
    rng = np.random.Generator(np.random.PCG64(seed))

    counterexamples = 0
    min_ratio = math.inf
    batch = 1000
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        conc = 10.0 ** rng.uniform(-0.3, 5.0, size=m)
        low_tot = s_low + rng.random(m) * (total - s_low)
        vals = np.empty(m)
        for r in range(m):
            wl = rng.dirichlet(np.full(low, conc[r]))
            wh = rng.dirichlet(np.full(high, conc[r]))
            g = np.concatenate([low_tot[r] * wl, (total - low_tot[r]) * wh])
            vals[r] = np.dot(g, g)
        ratios = vals / blocks.objective
        counterexamples += int(np.count_nonzero(ratios < 1.0 - REL_TOL))
        min_ratio = min(min_ratio, float(ratios.min()))
        done += m

    x = project_minimizer(low, high, s_low, total)
    x, improvement = _descend(x, low, s_low, total, rng)
    ref = np.concatenate([np.full(low, blocks.g_low), np.full(high, blocks.g_high)])
    rel_err = float(np.max(np.abs(x - ref) / ref))
    return MinimizerVerification(
        blocks=blocks,
        trials=trials,
        counterexamples=counterexamples,
        min_ratio=min_ratio,
        projected_low=float(x[:low].mean()),
        projected_high=float(x[low:].mean()),
        projection_rel_error=rel_err,
        descent_improvement=improvement,
        full_index_minimum=full_index_minimum(n, k, b, h),
    )


def final_chain_report(sample: SequenceSample, k: int,
                       table: Optional[PairCountTable] = None) -> ChainReport:
    """Evaluate every identity and inequality of the argument on one sample.

    ``k`` must be admissible for the sample's own ``F(k^2, N)``.  The closing
    inequalities (``H^2 < 8N^2/K + 4NF`` and on) come from a counterfactual
    and are reported with whatever truth value the numbers give.
    """
    n = sample.n
    if table is None or table.s_max < k * k:
        if k * k > n // 2:
            raise InfeasibleError(f"K^2 = {k * k} exceeds N/2")
        table = pair_counts_fast(sample, k * k)
    f = f_estimate(table, k * k).value
    if not k_feasible(n, k, f):
        raise InfeasibleError(f"K = {k} is outside the admissible window for F(K^2, N) = {f:.6g}")
    H = theorem_bound(n, f)
    disc = star_discrepancy_exact(sample)
    rep = ChainReport(n=n, k=k, f_value=f, h_value=H, n_d_star=disc.n_d_star)

    rep.add("k_upper", k ** 5, n ** 2, "<=", "K <= N^(2/5) as K^5 <= N^2")
    if (2 * k) ** 5 >= n ** 2:
        rep.add("k_lower", (2 * k) ** 5, n ** 2, ">=", "K >= N^(2/5)/2 as (2K)^5 >= N^2")
    else:
        rep.add("k_lower", k * f, n, ">=", "K >= N/F(K^2,N)")
    rep.add("discrepancy_bound", disc.n_d_star, H, "<=")

    stats = profile_stats(sample, k, table)
    profile = stats[0].profile
    rep.add("bin_partition", int(profile.bins.sum()), n, "==")
    for st in stats:
        L = st.L
        rep.add(f"window_total[L={L}]", st.window_total, L * n, "==")
        rep.add(f"pair_deviation[L={L}]", abs(st.h_count / (2 * L * k) - n), f, "<=")
        rep.add(f"pair_lower_bound[L={L}]", st.h_count, st.pair_lower_bound, ">=")
        rep.add(f"normalised_lower_bound[L={L}]", st.h_count / (2 * L * k * n),
                st.gamma - 1 / (2 * L * k), ">=")
        rep.add(f"telescoping[L={L}]", st.gamma, st.gamma_telescoped, "==")
    chain = chain_lower_bound([st.z for st in stats])
    rep.add("chain_bound", chain.max_term, chain.bound, ">=")
    rep.add("k_squared_vs_h", k * k, H / 5, "<=")

    a = n * n / k
    bf = n * f
    rep.add("closing_1", H * H, 8 * a + 4 * bf, "<",
            "holds only under the contradiction hypothesis")
    rep.add("closing_2", 8 * a + 4 * bf, 12 * max(a, bf), "<=")
    rep.add("closing_3", 12 * max(a, bf), 25 * max(n ** 1.6, bf), "<")

    bpt = disc.witness_a
    try:
        blocks = minimizer_blocks(n, k, bpt, H)
    except InfeasibleError as exc:
        rep.checks.append(Check("two_block_vs_asymptotic", math.nan, math.nan, ">=",
                                False, f"not applicable: {exc}"))
    else:
        lhs = blocks.objective / (2 * k * k * n)
        rhs = k / 2 * (1 + H * H / (2 * n * n))
        rep.add("two_block_vs_asymptotic", lhs, rhs, ">=",
                f"evaluated at B = witness point {bpt:.17g}; asserted only beyond N0")
    return rep
