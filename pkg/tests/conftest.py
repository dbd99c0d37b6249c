import pytest

from hopfdual.fixtures import VALID_POISSON, poisson
from hopfdual.poisson import to_lie_rinehart


@pytest.fixture(scope="session")
def fx():
    """Valid Poisson fixtures by name."""
    return {name: poisson(name) for name in VALID_POISSON}


@pytest.fixture(scope="session")
def lr(fx):
    return {name: to_lie_rinehart(pi) for name, pi in fx.items()}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
