import pytest

from cubediag import build_hypercube


@pytest.fixture(scope="session")
def q3():
    return build_hypercube(3)


@pytest.fixture(scope="session")
def q4():
    return build_hypercube(4)


@pytest.fixture(scope="session")
def q5():
    return build_hypercube(5)
