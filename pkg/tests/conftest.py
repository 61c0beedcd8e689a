import pytest

from app.models.graph import MulticoneParams
from app.utils.graph_ops import (
    disjoint_union,
    make_complete,
    make_cycle,
    make_empty,
    make_star,
    make_wheel,
    multicone,
)
from app.utils.logging_config import setup_test_logging


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow exhaustive scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True, scope="session")
def quiet_logging():
    setup_test_logging()


@pytest.fixture
def k4():
    return make_complete(4)


@pytest.fixture
def c4():
    return make_cycle(4)


@pytest.fixture
def w5():
    return make_wheel(5)


@pytest.fixture
def star4():
    return make_star(4)


@pytest.fixture
def c4_plus_k1():
    return disjoint_union(make_cycle(4), make_empty(1))


@pytest.fixture
def mc_3_2_5():
    return multicone(MulticoneParams(3, 2, 5))
