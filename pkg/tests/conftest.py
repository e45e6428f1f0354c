import pytest

from gogword.fixtures import load_fixture


@pytest.fixture(scope="session")
def zz():
    return load_fixture("zz")


@pytest.fixture(scope="session")
def f2f2():
    return load_fixture("f2f2")


@pytest.fixture(scope="session")
def zzz():
    return load_fixture("zzz")


@pytest.fixture(scope="session")
def hnn():
    return load_fixture("hnn_f2z")


@pytest.fixture(scope="session")
def f2_index3():
    return load_fixture("f2_index3")
