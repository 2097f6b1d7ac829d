import pytest

from cmpl.cm.fields import CMType, is_cm_field


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: numerical acceptance runs at full precision')


@pytest.fixture(scope='session')
def gaussian():
    return is_cm_field('x^2 + 1')


@pytest.fixture(scope='session')
def zeta5():
    return is_cm_field([1, 1, 1, 1, 1])


@pytest.fixture(scope='session')
def gaussian_type(gaussian):
    return CMType(gaussian, [0])


@pytest.fixture(scope='session')
def zeta5_type(zeta5):
    return CMType(zeta5, [0, 1])
