import pytest

from redrigid.curve_q import CurveQ, PointQ

# curves used throughout: y^2 = x^3 - 2, x^3 + x + 1, x^3 - x + 1
E_M2 = CurveQ(0, -2)
E_11 = CurveQ(1, 1)
E_M11 = CurveQ(-1, 1)
P0 = PointQ.affine(3, 5)
Q0 = PointQ.affine(0, 1)
R0 = PointQ.affine(1, 1)


@pytest.fixture
def curve_m2():
    return E_M2


@pytest.fixture
def base_point():
    return P0


# lines collected by tests/test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
