import pytest

from parity_ramsey.coloring import derive_params, enumerate_vertices
from parity_ramsey.verify import psi_oracle


@pytest.fixture(scope="session")
def params2():
    return derive_params(2)


@pytest.fixture(scope="session")
def oracle16(params2):
    return psi_oracle(params2, enumerate_vertices(params2, 16))


@pytest.fixture(scope="session")
def oracle64(params2):
    # shared: building all C(64,2) colors takes a moment
    return psi_oracle(params2, enumerate_vertices(params2, 64))
