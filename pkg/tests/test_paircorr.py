import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import lattice
from ppclab.paircorr import (PairCountTable, f_estimate, pair_count,
                             pair_count_bruteforce, pair_counts_bruteforce,
                             pair_counts_fast, ppc_statistic, set_threads,
                             wrap_distance)
from ppclab.sequences import SequenceSpec, generate, sample_from_values

METHODS = ["direct", "hybrid"]


def random_sample(seed, n):
    return generate(SequenceSpec("uniform_random", n, seed=seed))


# -- wrap_distance -----------------------------------------------------------

def test_wrap_distance_examples():
    assert wrap_distance(0.1, 0.9) == pytest.approx(0.2, abs=1e-15)
    assert wrap_distance(0.25, 0.75) == 0.5
    for a in (0.0, 0.3, 0.999):
        assert wrap_distance(a, a) == 0.0


@pytest.mark.parametrize("x, y", [(1.0, 0.2), (-0.1, 0.2), (0.2, np.nan)])
def test_wrap_distance_range(x, y):
    with pytest.raises(ValueError):
        wrap_distance(x, y)


@given(st.floats(0, 1, exclude_max=True), st.floats(0, 1, exclude_max=True))
def test_wrap_distance_symmetric_and_bounded(x, y):
    d = wrap_distance(x, y)
    assert d == wrap_distance(y, x)
    assert 0.0 <= d <= 0.5


# -- brute force -------------------------------------------------------------

@pytest.mark.parametrize("vals, t, expected", [
    ((0.0, 0.5), 0.25, 0),
    ((0.0, 0.1, 0.95), 0.12, 4),
    ((0.0, 0.25, 0.5, 0.75), 0.5, 8),
])
def test_bruteforce_examples(vals, t, expected):
    assert pair_count_bruteforce(sample_from_values(vals), t) == expected


def test_bruteforce_matches_python_double_loop():
    x = random_sample(9, 150).values
    for t in (0.001, 0.01, 0.2, 0.5, 0.7):
        ref = sum(1 for i in range(x.size) for j in range(x.size)
                  if i != j and wrap_distance(x[i], x[j]) < t)
        assert pair_count_bruteforce(sample_from_values(x), t) == ref


def test_bruteforce_rejects_nonpositive_threshold():
    with pytest.raises(ValueError):
        pair_count_bruteforce(sample_from_values([0.1, 0.2]), 0.0)


# -- fast counts ---------------------------------------------------------------

@pytest.mark.parametrize("method", METHODS)
def test_fast_zero_at_min_gap(method):
    # N points never have a min gap above 1/N; a dyadic lattice sits exactly
    # on it and the strict comparison excludes every pair
    tab = pair_counts_fast(lattice(32, offset=0.5), 1, method=method)
    assert tab.count(1) == 0


@given(st.integers(0, 2**32), st.integers(2, 300))
def test_pair_count_zero_below_min_gap(seed, n):
    s = random_sample(seed, n)
    xs = s.sorted_values()
    gaps = np.append(np.diff(xs), 1.0 - (xs[-1] - xs[0]))
    g = gaps.min()
    if g > 0:
        assert pair_count(s, g) == 0


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("n", [4, 16, 64, 1024, 8192])
def test_fast_dyadic_lattice(method, n):
    tab = pair_counts_fast(lattice(n), min(n // 2, 12), method=method)
    for s in range(1, tab.s_max + 1):
        assert tab.count(s) == 2 * (s - 1) * n
    if tab.s_max >= 3:
        assert tab.count(3) == 4 * n


def test_lattice_ties_follow_double_comparisons():
    # for non-dyadic N the lattice gaps are rounded, and the oracle decides
    for n in (10, 100, 1000):
        s = lattice(n)
        ref = pair_counts_bruteforce(s, min(n // 2, 20))
        for method in METHODS:
            assert np.array_equal(pair_counts_fast(s, min(n // 2, 20), method=method).counts, ref)


@given(st.integers(0, 2**32), st.integers(2, 600), st.data())
def test_fast_equals_bruteforce_random(seed, n, data):
    s = random_sample(seed, n)
    s_max = data.draw(st.integers(1, max(1, min(40, n // 2))))
    ref = pair_counts_bruteforce(s, s_max)
    for method in METHODS:
        assert np.array_equal(pair_counts_fast(s, s_max, method=method).counts, ref)


@st.composite
def structured_samples(draw):
    n = draw(st.integers(4, 400))
    kind = draw(st.sampled_from(["grid", "dupes", "kronecker", "vdc", "cluster"]))
    if kind == "grid":
        m = draw(st.integers(2, 3 * n))
        vals = np.array(draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))) / m
    elif kind == "dupes":
        pool = draw(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=8))
        vals = np.array(draw(st.lists(st.sampled_from(pool), min_size=n, max_size=n)))
    elif kind == "kronecker":
        vals = generate(SequenceSpec("kronecker", n, alpha=draw(st.floats(-3, 3)))).values
    elif kind == "vdc":
        vals = generate(SequenceSpec("vdc", n, base=draw(st.integers(2, 7)))).values
    else:
        c = draw(st.floats(0, 1, exclude_max=True))
        vals = (c + np.array(draw(st.lists(st.floats(-0.01, 0.01), min_size=n, max_size=n)))) % 1.0
        vals[vals >= 1.0] = 0.0
    return sample_from_values(vals)


@given(structured_samples(), st.data())
def test_fast_equals_bruteforce_structured(sample, data):
    s_max = data.draw(st.integers(1, sample.n // 2))
    ref = pair_counts_bruteforce(sample, s_max)
    for method in METHODS:
        assert np.array_equal(pair_counts_fast(sample, s_max, method=method).counts, ref)


def test_hybrid_equals_direct_large():
    s = random_sample(5, 20_000)
    a = pair_counts_fast(s, 300, method="direct")
    b = pair_counts_fast(s, 300, method="hybrid")
    assert np.array_equal(a.counts, b.counts)


@pytest.mark.parametrize("s_max", [0, -1, 6, 2.5])
def test_fast_s_max_range(s_max):
    with pytest.raises(ValueError):
        pair_counts_fast(sample_from_values(np.arange(10) / 10), s_max)


def test_fast_unknown_method():
    with pytest.raises(ValueError):
        pair_counts_fast(sample_from_values([0.1, 0.6]), 1, method="fft")


@given(st.integers(0, 2**32), st.integers(2, 500))
def test_table_invariants(seed, n):
    tab = pair_counts_fast(random_sample(seed, n), max(1, n // 2))
    c = tab.counts[1:]
    assert np.all(c % 2 == 0) and np.all(c >= 0)
    assert np.all(np.diff(c) >= 0)
    assert np.all(c <= n * (n - 1))


# -- invariances ---------------------------------------------------------------

@given(st.integers(0, 2**32), st.integers(2, 500))
def test_counts_permutation_invariant(seed, n):
    s = random_sample(seed, n)
    perm = np.random.default_rng(seed).permutation(s.values)
    s_max = min(20, n // 2)
    assert np.array_equal(pair_counts_fast(s, s_max).counts,
                          pair_counts_fast(sample_from_values(perm), s_max).counts)


@given(st.integers(0, 2**32), st.integers(2, 500))
def test_counts_reflection_invariant(seed, n):
    s = random_sample(seed, n)
    refl = (1.0 - s.values) % 1.0
    s_max = min(20, n // 2)
    assert np.array_equal(pair_counts_fast(s, s_max).counts,
                          pair_counts_fast(sample_from_values(refl), s_max).counts)


@given(st.integers(0, 2**32), st.integers(2, 500), st.floats(0, 1, exclude_max=True))
def test_counts_shift_invariant(seed, n, c):
    # random reals sit far from every threshold, so rounding in the shift
    # cannot move a pair across one
    s = random_sample(seed, n)
    shifted = (s.values + c) % 1.0
    shifted[shifted >= 1.0] = 0.0
    s_max = min(20, n // 2)
    assert np.array_equal(pair_counts_fast(s, s_max).counts,
                          pair_counts_fast(sample_from_values(shifted), s_max).counts)


def test_dyadic_lattice_shift_by_dyadic_constant():
    s = lattice(256)
    shifted = sample_from_values((s.values + 0.375) % 1.0)
    assert np.array_equal(pair_counts_fast(s, 30).counts, pair_counts_fast(shifted, 30).counts)


# -- pair_count at arbitrary thresholds ------------------------------------------

@given(st.integers(0, 2**32), st.integers(2, 300), st.floats(1e-6, 0.5))
def test_pair_count_matches_bruteforce(seed, n, t):
    s = random_sample(seed, n)
    assert pair_count(s, t) == pair_count_bruteforce(s, t)


def test_pair_count_saturates():
    s = random_sample(1, 50)
    assert pair_count(s, 0.6) == 50 * 49 == pair_count_bruteforce(s, 0.6)


def test_duplicates_count_as_close_pairs():
    s = sample_from_values([0.3, 0.3, 0.3, 0.8])
    assert pair_count(s, 1e-9) == 6
    assert pair_counts_fast(s, 1).count(1) == 6


# -- statistics ----------------------------------------------------------------

@pytest.mark.parametrize("n", [64, 512])
def test_ppc_statistic_dyadic_lattice(n):
    tab = pair_counts_fast(lattice(n), 10)
    for s in range(1, 11):
        assert ppc_statistic(tab, s) == 2 * (s - 1)


def test_ppc_statistic_identical_points():
    tab = pair_counts_fast(sample_from_values([0.4, 0.4, 0.4]), 1)
    assert ppc_statistic(tab, 1) == 2.0


def test_ppc_statistic_missing_s():
    tab = pair_counts_fast(lattice(16), 4)
    with pytest.raises(KeyError):
        ppc_statistic(tab, 5)


@pytest.mark.parametrize("n", [32, 1024])
def test_f_estimate_dyadic_lattice(n):
    fe = f_estimate(pair_counts_fast(lattice(n), 10), 10)
    assert fe.value == n and fe.argmax_s == 1


def test_f_estimate_perfect_counts():
    n = 100
    counts = np.array([2 * s * n for s in range(0, 11)], dtype=np.int64)
    assert f_estimate(PairCountTable(n, counts), 10).value == 0.0


def test_f_estimate_k_range():
    tab = pair_counts_fast(lattice(16), 4)
    for k in (0, 5):
        with pytest.raises(ValueError):
            f_estimate(tab, k)


@given(st.integers(0, 2**32), st.integers(4, 500))
def test_f_estimate_monotone_in_k(seed, n):
    tab = pair_counts_fast(random_sample(seed, n), n // 2)
    vals = [f_estimate(tab, k).value for k in range(1, tab.s_max + 1)]
    assert all(v >= 0 for v in vals)
    assert np.all(np.diff(vals) >= 0)


def test_set_threads(monkeypatch):
    assert set_threads(1) == 1
    monkeypatch.setenv("PPCLAB_THREADS", "1")
    assert set_threads() == 1
    monkeypatch.setenv("PPCLAB_THREADS", "many")
    with pytest.raises(ValueError):
        set_threads()
