import functools

import numpy as np
import pytest

from toric_ghz.lattice import build
from toric_ghz.toric import ground_stabilizers

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def lattice_and_ground(k):
    lat = build(k)
    return lat, ground_stabilizers(lat)


@pytest.fixture
def lat3():
    return lattice_and_ground(3)[0]


@pytest.fixture
def ground3():
    return lattice_and_ground(3)[1]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
