# BSD 3-Clause License; see LICENSE

from __future__ import annotations

from pathlib import Path

import pytest

import secfan

DATA = Path(__file__).parent / "data"


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def delta24():
    return secfan.vertices((2, 4))


@pytest.fixture
def delta25():
    return secfan.vertices((2, 5))


@pytest.fixture
def delta26():
    return secfan.vertices((2, 6))


@pytest.fixture
def split24(delta24):
    # cells: the two pyramids over the square of vertices 1010, 1001, 0110, 0101
    return secfan.regular_subdivision(delta24, secfan.split_pseudometric(4, [0, 1]))


@pytest.fixture
def thrackle24(delta24):
    # four tetrahedra around the diagonal 1010 -- 0101
    return secfan.regular_subdivision(delta24, secfan.thrackle(4))


@pytest.fixture
def bees_path():
    return DATA / "bees.dist"


@pytest.fixture
def bees(bees_path):
    return secfan.io.read_distance_file(bees_path).metric
