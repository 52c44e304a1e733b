import pytest

from hyperkm.roots import FAmbient


@pytest.fixture(scope="session")
def f_ambient():
    return FAmbient(26)
