import random

import pytest

from eqcolor.hypercore import Hypergraph


@pytest.fixture
def triangle():
    return Hypergraph.from_edges(3, 2, [(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def k4():
    return Hypergraph.from_edges(4, 2, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
