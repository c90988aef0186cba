import math
import sys
from pathlib import Path

import numpy as np
import pytest

from coopnc.model import ChannelRealization, FadingProfile, SnrPoint

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
# experiments/ is a script folder, not a package
sys.path.insert(0, str(ROOT / "experiments"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long statistical acceptance tests")
    parser.addoption("--update-golden", action="store_true", default=False,
                     help="rewrite the files under tests/golden from the current code")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo acceptance test (needs --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def gains(s1_s2=0.0, s2_s1=0.0, s1_d1=0.0, s1_d2=0.0, s2_d1=0.0, s2_d2=0.0):
    return ChannelRealization.from_gain2([s1_s2, s2_s1, s1_d1, s1_d2, s2_d1, s2_d2])


@pytest.fixture
def rho1():
    return SnrPoint(1.0)


@pytest.fixture
def unit_channel():
    return gains(1, 1, 1, 1, 1, 1)


@pytest.fixture
def example_channel():
    """The hand-evaluated channel: g(S1->S2) = 3, g(S1->D1) = g(S2->D1) = 1, mirrored for User2."""
    return gains(3, 3, 1, 1, 1, 1)


@pytest.fixture
def symmetric_profile():
    return FadingProfile.symmetric()


@pytest.fixture
def golden_config_path():
    return ROOT / "configs" / "golden.yaml"


def random_channels(n, seed):
    rng = np.random.default_rng(seed)
    h = (rng.standard_normal((n, 6)) + 1j * rng.standard_normal((n, 6))) * math.sqrt(0.5)
    return [ChannelRealization(tuple(row)) for row in h]


@pytest.fixture
def golden(request):
    """
    Compares bytes with a checked-in file under tests/golden. A missing file
    (or ``--update-golden``) is recorded from the current code and the test
    is skipped, so a new golden file shows up as a diff to commit.
    """
    update = request.config.getoption("--update-golden")

    def check(name, data: bytes):
        path = GOLDEN / name
        if update or not path.exists():
            path.parent.mkdir(exist_ok=True)
            path.write_bytes(data)
            pytest.skip(f"recorded {path.relative_to(ROOT)}")
        assert data == path.read_bytes(), f"output differs from tests/golden/{name}"
    return check
