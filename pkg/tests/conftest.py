import pytest

from eorec import build_stores


@pytest.fixture(scope="session")
def stores():
    """Calibrated stores for the three probe framings, shared per session."""
    return build_stores([1, 2, 3])


@pytest.fixture(scope="session")
def store_f1(stores):
    return stores[0]
