from fractions import Fraction

import pytest

THETAS_RATIONAL = (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3))


@pytest.fixture(params=THETAS_RATIONAL, ids=str)
def rational_theta(request):
    return request.param


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def _verdict(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else "")
        print(line)
        request.config._acceptance_lines.append(line)
        assert ok, line

    return _verdict


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
