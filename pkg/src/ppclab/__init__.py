"""Pair-correlation statistics and star-discrepancy for sequences in [0, 1)."""

__version__ = "0.1.0"

from .sequences import (SequenceSample, SequenceSpec, frac, generate, load_points,
                        sample_from_values, write_points)
from .paircorr import (FEstimate, PairCountTable, f_estimate, pair_count,
                       pair_count_bruteforce, pair_counts_fast, ppc_statistic,
                       wrap_distance)
from .discrepancy import (BoundCheck, DiscrepancyReport, bound_check,
                          count_in_prefix_interval, select_K,
                          star_discrepancy_exact, star_discrepancy_grid_oracle,
                          theorem_bound)
from .prooflab import (bin_counts, chain_lower_bound, final_chain_report,
                       minimizer_blocks, verify_minimizer, window_stats)

__all__ = [
    "SequenceSample", "SequenceSpec", "frac", "generate", "load_points",
    "sample_from_values", "write_points",
    "FEstimate", "PairCountTable", "f_estimate", "pair_count",
    "pair_count_bruteforce", "pair_counts_fast", "ppc_statistic", "wrap_distance",
    "BoundCheck", "DiscrepancyReport", "bound_check", "count_in_prefix_interval",
    "select_K", "star_discrepancy_exact", "star_discrepancy_grid_oracle",
    "theorem_bound",
    "bin_counts", "chain_lower_bound", "final_chain_report", "minimizer_blocks",
    "verify_minimizer", "window_stats",
]
