import pytest

import isingcorr as ic


@pytest.fixture(scope="session")
def below():
    return ic.diagonal_from_alpha2(0.5)


@pytest.fixture(scope="session")
def below_grid(below):
    return ic.make_grid(below, 64)


@pytest.fixture(scope="session")
def above():
    return ic.diagonal_from_alpha2(2.5)


@pytest.fixture(scope="session")
def above_grid(above):
    return ic.make_grid(above, 64)


@pytest.fixture(scope="session")
def degenerate():
    return ic.direct(0.3, 0.3)
