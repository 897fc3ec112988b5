import numpy as np
import pytest

FIG1_ZEROS = [0.4 + 0.7j, 0.9j, 0.6, -0.9j]


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE = {}


def record(criterion, passed, detail):
    """Store one acceptance line; printed at the end of the session."""
    ACCEPTANCE[criterion] = (bool(passed), detail)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for key in sorted(ACCEPTANCE, key=lambda k: (int(''.join(filter(str.isdigit, k))), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f'{"PASS" if ok else "FAIL"}  {key:>3}  {detail}')
