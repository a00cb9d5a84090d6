import pytest

from biharmonica.geometry import BCV, SOL, SPACE_FORM, make_model
from biharmonica.server import server
from biharmonica.settings import settings


@pytest.fixture(autouse=True)
def clean_state():
    yield
    server.stop_all()
    settings.reset()


@pytest.fixture
def euclid():
    return make_model(BCV, m=0.0, l=0.0)


@pytest.fixture
def sol():
    return make_model(SOL)


@pytest.fixture
def s3():
    return make_model(SPACE_FORM, c=1.0)
