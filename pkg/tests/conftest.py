import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from ppclab.sequences import sample_from_values

settings.register_profile("ppclab", max_examples=60, deadline=None)
settings.load_profile("ppclab")

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def pair_count_fixture():
    return json.loads((FIXTURES / "pair_counts.json").read_text())


@pytest.fixture(scope="session")
def bound_fixture():
    return json.loads((FIXTURES / "bound_check.json").read_text())


def lattice(n, offset=0.0):
    """``(i + offset) / n`` for ``i = 0..n-1``."""
    return sample_from_values((np.arange(n) + offset) / n, "lattice")
