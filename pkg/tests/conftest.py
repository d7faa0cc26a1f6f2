import pytest

from qcblowup import derive_params

GRID = [(4, 0), (6, 1), (8, 1), (9, 2), (11, 3)]


@pytest.fixture(scope="session")
def params40():
    return derive_params(4, 0)


@pytest.fixture(scope="session")
def params81():
    return derive_params(8, 1)


@pytest.fixture(scope="session", params=GRID, ids=[f"m{m}p{p}" for m, p in GRID])
def grid_params(request):
    m, p = request.param
    return derive_params(m, p)
