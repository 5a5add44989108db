import random

import pytest

from orthinv.catalog import CATALOG
from orthinv.field import Ram, TowerSpec, Unram, build_field

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])


@pytest.fixture
def rng():
    return random.Random(20240611)


def tower_id(t):
    return str(t.spec)


@pytest.fixture(params=CATALOG, ids=tower_id)
def catalog_tower(request):
    return request.param


def Q(p):
    return build_field(TowerSpec(p))


def field_of(p, *steps):
    return build_field(TowerSpec(p, tuple(steps)))


__all__ = ["Q", "field_of", "Ram", "Unram", "ACCEPTANCE_LINES"]
