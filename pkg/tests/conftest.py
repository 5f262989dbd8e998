import random

import pytest

from tests.helpers import CORPUS
from whilesem.models.syntax import State
from whilesem.models.verdict import CheckBudget


@pytest.fixture(scope="session")
def programs():
    return {entry.name: entry.program() for entry in CORPUS}


@pytest.fixture
def sigma():
    return State(x=1, y=2)


@pytest.fixture
def budget():
    return CheckBudget(fuel=100, depth=50, inputs=(-2, -1, 0, 1, 2), breadth=200000)


@pytest.fixture
def rng():
    return random.Random(20240611)
