import pytest

from mumeb.ring import fields_ring, zd_ring


def ring_pair(d):
    """Fields-mode and Zd-mode rings for one dimension (may coincide in shape)."""
    return fields_ring(d), zd_ring(d)


@pytest.fixture(scope="session")
def f3():
    return fields_ring(3)


@pytest.fixture(scope="session")
def f9():
    return fields_ring(9)


@pytest.fixture(scope="session")
def z9():
    return zd_ring(9)


@pytest.fixture(scope="session")
def f15():
    return fields_ring(15)
