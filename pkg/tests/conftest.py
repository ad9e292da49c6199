import numpy as np
import pytest

from carlitzlab.fq import fq_field


@pytest.fixture(scope="session")
def F2():
    return fq_field(2)


@pytest.fixture(scope="session")
def F3():
    return fq_field(3)


@pytest.fixture(scope="session")
def F4():
    return fq_field(2, 2)


@pytest.fixture(scope="session")
def F5():
    return fq_field(5)


@pytest.fixture(scope="session")
def F9():
    return fq_field(3, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
