import functools

import pytest

from apnspectra.boolfn import Family, FamilyParams, build, validate_params
from apnspectra.gf2n import make_field

# lines reported by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def field(n, poly=None):
    return make_field(n, poly)


@functools.lru_cache(maxsize=None)
def table(family, poly=None, **kw):
    p = validate_params(FamilyParams(Family(family), **kw))
    spec = field(p.n, poly)
    return build(spec, p)


@pytest.fixture
def gf():
    return field


@pytest.fixture
def tt():
    return table


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
