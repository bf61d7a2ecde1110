"""Rebuild the frozen fixtures in this directory.

Pair counts are computed with the all-pairs oracle only; nothing here calls
the fast counting routes.  The bound-check block is a regression record of
the library's own output and is refreshed with ``--bound``.

    python tests/fixtures/regenerate.py [--bound]
"""

import json
import sys
from pathlib import Path

import numpy as np

from ppclab.sequences import DEFAULT_KRONECKER_ALPHA, SequenceSpec, generate
from ppclab.paircorr import pair_counts_bruteforce

HERE = Path(__file__).parent


def oracle_counts():
    out = {"kronecker": {}, "uniform": {}}
    for n in (1000, 10_000, 100_000):
        sample = generate(SequenceSpec("kronecker", n, alpha=DEFAULT_KRONECKER_ALPHA))
        out["kronecker"][str(n)] = pair_counts_bruteforce(sample, 8)[1:].tolist()
        print("kronecker", n, out["kronecker"][str(n)], flush=True)
    sample = generate(SequenceSpec("uniform_random", 100_000, seed=42))
    out["uniform"]["100000"] = pair_counts_bruteforce(sample, 10)[1:].tolist()
    print("uniform", out["uniform"]["100000"], flush=True)
    return out


def bound_records():
    from ppclab.discrepancy import bound_check

    recs = {}
    for name, spec in [
        ("uniform_seed42_n100000", SequenceSpec("uniform_random", 100_000, seed=42)),
        ("vdc_base2_n65536", SequenceSpec("vdc", 2 ** 16, base=2)),
    ]:
        bc = bound_check(generate(spec))
        recs[name] = {
            "k": bc.k, "f_value": bc.f_value, "h_value": bc.h_value,
            "n_d_star": bc.n_d_star, "satisfied": bc.satisfied,
            "k_feasible": bc.k_feasible,
        }
        print(name, recs[name], flush=True)
    return recs


if __name__ == "__main__":
    if "--bound" in sys.argv:
        path = HERE / "bound_check.json"
        path.write_text(json.dumps(bound_records(), indent=2) + "\n")
    else:
        path = HERE / "pair_counts.json"
        data = {"alpha": DEFAULT_KRONECKER_ALPHA, "seed": 42, **oracle_counts()}
        path.write_text(json.dumps(data, indent=2) + "\n")
