import numpy as np
import pytest

from szekeres import model


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def n3_gradual():
    return model(3, [1.0, -0.3], [0.5])


@pytest.fixture
def n2_rapid():
    return model(2, [1.0, 0.0, -0.2], [0.0])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
