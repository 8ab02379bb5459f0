import pytest
from hypothesis import settings

from qhopf.coeff import qfield
from qhopf.ncalg import algebra

settings.register_profile("qhopf", max_examples=40, deadline=None)
settings.load_profile("qhopf")


@pytest.fixture(scope="session")
def F():
    return qfield()


@pytest.fixture(scope="session")
def A():
    return algebra("standard", "localized")


@pytest.fixture(scope="session")
def Ahat():
    return algebra("hat", "localized")


@pytest.fixture(scope="session")
def Acore():
    return algebra("standard", "core")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
