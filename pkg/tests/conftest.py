import math
import sys

import numpy as np
import pytest
from hypothesis import settings

from bertrand_curves.bertrand import validate_pair
from bertrand_curves.curves import CurveSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SQRT2 = math.sqrt(2.0)
HELIX = CurveSpec.catalog("CircularHelix")
GRID50 = np.linspace(0.0, 2 * math.pi, 50)


@pytest.fixture(scope="session")
def helix():
    return HELIX


@pytest.fixture(scope="session")
def grid50():
    return GRID50


@pytest.fixture(scope="session")
def pair_quarter():
    """The helix paired at offset sqrt(2)/4."""
    return validate_pair(HELIX, SQRT2 / 4, GRID50)


@pytest.fixture(scope="session")
def pair_negative():
    return validate_pair(HELIX, -SQRT2, GRID50)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.summary_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for text in lines:
            terminalreporter.write_line(text)
