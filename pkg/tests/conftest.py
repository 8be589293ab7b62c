from functools import lru_cache

import pytest

from tautilt.classify import check_theorem, enumerate_indecomposables
from tautilt.corpus import CORPUS, get


@lru_cache(maxsize=None)
def algebra(name: str, field: int = 2):
    return get(name).algebra(field)


@lru_cache(maxsize=None)
def report(name: str):
    e = get(name)
    return check_theorem(algebra(name), e.dim_bound, name=name, families=e.families,
                         saturation=False)


@lru_cache(maxsize=None)
def table(name: str):
    return enumerate_indecomposables(algebra(name), get(name).dim_bound)


COMPUTED = [n for n, e in CORPUS.items() if e.families]


@pytest.fixture
def a3():
    return algebra("a3rad2")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
