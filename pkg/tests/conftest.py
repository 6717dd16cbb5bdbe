import pytest

from moyalex.statesum import default_table
from moyalex.verify import corpus


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def named():
    return corpus.named_diagrams()


@pytest.fixture(scope="session")
def theta_51():
    return corpus.theta_51(1, 1)


@pytest.fixture(scope="session")
def theta_trivial():
    return corpus.theta_trivial(1, 1)
