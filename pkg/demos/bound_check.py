# %% [markdown]
# # From pair counts to a discrepancy bound
#
# If the close-pair counts never stray far from 2sN, the points cannot
# bunch up either: N * D*_N <= 5 * max(N^{4/5}, sqrt(N * F(K^2, N))), where
# F(K^2, N) is the worst pair-count deviation up to s = K^2 and K must lie
# in a window that depends on F. The bound is only promised beyond an
# unspecified sample size, so a failed comparison would be "inconclusive".

# %%
from ppclab import SequenceSpec, bound_check, generate, theorem_bound
from ppclab.discrepancy import discrepancy_bound_for_eps, select_k

# %% [markdown]
# The K window in isolation. With a flat deviation F = 0.01 N at N = 1e5
# the admissible range is 50 <= K <= 100 and the smallest choice is taken.

# %%
print(select_k(10**5, lambda k: 0.01 * 10**5))
print(theorem_bound(10**5, 0.0), theorem_bound(10**5, 1000.0))

# %% [markdown]
# End to end on a few sequences.

# %%
specs = [
    SequenceSpec("uniform_random", 100_000, seed=42),
    SequenceSpec("vdc", 2**16),
    SequenceSpec("sqrt_n", 100_000),
    SequenceSpec("kronecker", 100_000),
    SequenceSpec("quadratic", 100_000),
]
print(f"{'sequence':>16} {'K':>4} {'F(K^2,N)':>10} {'bound H':>10} {'N*D*':>8}  verdict")
for spec in specs:
    bc = bound_check(generate(spec))
    print(f"{spec.kind:>16} {bc.k:4d} {bc.f_value:10.1f} {bc.h_value:10.0f} {bc.n_d_star:8.2f}  {bc.verdict}")

# %% [markdown]
# Dividing by N: if F(K^2, N) = eps * N then D*_N <= 5 max(N^{-1/5}, sqrt(eps)).
# Reaching the sqrt(eps) regime needs K around 1/eps^2, far beyond desk
# scale for small eps, so here we only print the formula.

# %%
for eps in (0.1, 0.01, 0.001):
    print(eps, [round(discrepancy_bound_for_eps(n, eps), 4) for n in (10**4, 10**6, 10**8, 10**10)])
