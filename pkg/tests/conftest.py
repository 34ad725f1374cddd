import numpy as np
import pytest

from qge.channel import ControlledPair
from qge.scattering import ChannelSMatrix


def random_channel(rng) -> ChannelSMatrix:
    """Uniformly random symmetric-unitary (r, t) with arbitrary global phase."""
    theta = rng.uniform(0.0, np.pi / 2)
    chi = rng.uniform(-np.pi, np.pi)
    sign = rng.choice([-1.0, 1.0])
    r = np.cos(theta) * np.exp(1j * chi)
    t = sign * 1j * np.sin(theta) * np.exp(1j * chi)
    return ChannelSMatrix(r, t)


def random_pair(rng) -> ControlledPair:
    return ControlledPair(random_channel(rng), random_channel(rng), random_channel(rng))


@pytest.fixture
def rng():
    return np.random.default_rng(20251017)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
