import numpy as np
import pytest

from quasitrees import Bouquet
from quasitrees.sampling import random_bouquet

from worked_example import EXAMPLE_ROTATION

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def example() -> Bouquet:
    return Bouquet.parse(EXAMPLE_ROTATION)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def random_bouquets(count, n_range, p, seed):
    rng = np.random.default_rng(seed)
    lo, hi = n_range
    for _ in range(count):
        yield random_bouquet(int(rng.integers(lo, hi + 1)), p, rng)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
