import random

import pytest

from app.services.ffcore import make_field, make_quadratic_extension
from config import settings


@pytest.fixture
def rng():
    return random.Random(settings.DEFAULT_SEED)


@pytest.fixture(scope="session")
def f7():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def f11_2():
    return make_field(11, 2)


@pytest.fixture(scope="session")
def f11_3():
    return make_field(11, 3)


@pytest.fixture(scope="session")
def quad_11_2():
    return make_quadratic_extension(make_field(11, 2))
