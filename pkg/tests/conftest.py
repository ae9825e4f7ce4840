import pytest

from uavlink.channel import derive_constants
from uavlink.config import load_preset


@pytest.fixture(scope="session")
def dense_urban():
    return load_preset("dense_urban")


@pytest.fixture(scope="session")
def suburban():
    return load_preset("suburban")


@pytest.fixture(scope="session")
def dense_consts(dense_urban):
    return derive_constants(dense_urban.scenario, dense_urban.link)


@pytest.fixture(scope="session")
def suburban_consts(suburban):
    return derive_constants(suburban.scenario, suburban.link)
