import os

import pytest

from torscat.algebra import incidence_algebra, two_cycle_algebra
from torscat.poset import interval_poset
from torscat.torsion import ModuleContext, enumerate_torsion_pairs


def pytest_collection_modifyitems(config, items):
    if os.environ.get("TORSCAT_EXTENDED"):
        return
    skip = pytest.mark.skip(reason="extended check; set TORSCAT_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def example_ctx():
    return ModuleContext.for_algebra(two_cycle_algebra(), 2)


@pytest.fixture(scope="session")
def example_lattice(example_ctx):
    return enumerate_torsion_pairs(example_ctx)


@pytest.fixture(scope="session")
def int2_ctx():
    return ModuleContext.for_algebra(incidence_algebra(interval_poset(2)), 2)


@pytest.fixture(scope="session")
def int2_lattice(int2_ctx):
    return enumerate_torsion_pairs(int2_ctx)
