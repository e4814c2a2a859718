import pytest
from hypothesis import HealthCheck, settings

import qsym
from qsym import fixtures

settings.register_profile(
    "qsym",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qsym")


@pytest.fixture(scope="session")
def clebsch():
    return fixtures.load_graph("clebsch")


@pytest.fixture(scope="session")
def clebsch_pentagonal():
    return fixtures.load_graph("clebsch_pentagonal")


@pytest.fixture(scope="session")
def clebsch_autos(clebsch):
    return qsym.automorphisms(clebsch)


@pytest.fixture(scope="session")
def k4():
    return fixtures.load_graph("k4")


@pytest.fixture(scope="session")
def c5():
    return fixtures.load_graph("c5")
