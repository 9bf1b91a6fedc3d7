import pytest

from ewens_ldp.core import ModelParams

ALPHAS = (0.25, 0.5, 0.75)
THETAS = (-0.1, 0.0, 0.5, 1.0)
PARAM_GRID = [ModelParams(a, th) for a in ALPHAS for th in THETAS]

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
