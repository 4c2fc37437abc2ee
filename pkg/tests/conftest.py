import math

import pytest

from ptwft.constraint import build_constraint
from ptwft.grid import build_grid, PiecewiseConstant
from ptwft.model import ModelParams, PowerLaw, State

SQRT3_5 = math.sqrt(3.0) / 5.0


def tollgate_params():
    return ModelParams(0.6, 1.0, 1.2, PowerLaw(2.0))


def tollgate_datum(P):
    return PiecewiseConstant([-8.0, -5.0, 0.0],
                             [P.vacuum, State(0.0, 1.0), State(0.0, 1.2), P.vacuum])


@pytest.fixture(scope="session")
def P():
    return tollgate_params()


@pytest.fixture(scope="session")
def data(P):
    return build_constraint(SQRT3_5, P)


@pytest.fixture(scope="session")
def grid6(data):
    return build_grid(6, data)


ACCEPTANCE_LINES = []


def report(criterion, passed, detail):
    """Record and print one pass/fail line for an acceptance criterion."""
    line = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
