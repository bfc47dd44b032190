import contextlib

import pytest

from wvcsp import (
    Domain,
    disequality_cost_relation,
    equality_cost_relation,
    omega_sub,
)


@pytest.fixture
def bool_domain():
    return Domain(2)


@pytest.fixture
def r_eq(bool_domain):
    """Total binary relation: 0 when equal, 1 when different."""
    return equality_cost_relation(bool_domain)


@pytest.fixture
def r_ne(bool_domain):
    """Total binary relation: 1 when equal, 0 when different."""
    return disequality_cost_relation(bool_domain)


@pytest.fixture
def w_sub():
    return omega_sub()


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL summary line per acceptance criterion."""

    @contextlib.contextmanager
    def _record(num, name):
        lines = request.config.acceptance_lines
        try:
            yield
        except BaseException:
            lines.append(f"criterion {num} ({name}): FAIL")
            raise
        lines.append(f"criterion {num} ({name}): PASS")

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
