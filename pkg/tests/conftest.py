import functools

import pytest

from isa.algebra import ideal_I
from isa.semigroup import builtin_corpus

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def _corpus():
    return builtin_corpus()


@functools.lru_cache(maxsize=None)
def cached_ideals(name):
    return ideal_I(_corpus()[name])


@pytest.fixture(scope="session")
def corpus():
    return _corpus()


@pytest.fixture(scope="session")
def ideals_of():
    return cached_ideals


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
