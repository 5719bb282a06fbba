import contextlib

import pytest

from wcover.geometry import Ball, Box, VSimplex, polygon

# criterion number -> (passed, detail); printed at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record PASS/FAIL for an acceptance criterion around a test body."""
    detail = {"text": ""}
    try:
        yield detail
    except BaseException as exc:
        ACCEPTANCE[number] = (False, f"{title}: {type(exc).__name__}: {exc}".splitlines()[0])
        raise
    ACCEPTANCE[number] = (True, f"{title}: {detail['text']}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture(scope="session")
def triangle():
    return VSimplex(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)))


@pytest.fixture(scope="session")
def hexagon():
    # (K - K)/2 for the triangle above
    return polygon([(0.5, 0.0), (0.5, -0.5), (0.0, -0.5), (-0.5, 0.0), (-0.5, 0.5), (0.0, 0.5)])


@pytest.fixture
def unit_square():
    return Box((-1.0, -1.0), (1.0, 1.0))


@pytest.fixture
def unit_disk():
    return Ball((0.0, 0.0), 1.0)
