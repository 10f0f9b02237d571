import pytest
from hypothesis import HealthCheck, settings

from khpert import scenario

settings.register_profile("default", max_examples=50, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def he():
    return scenario.load("he")


@pytest.fixture(scope="session")
def ne():
    return scenario.load("ne")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
