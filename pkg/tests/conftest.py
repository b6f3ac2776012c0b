import time

import pytest

from gcdim.euler import DimTable, euler_from_dims
from gcdim.flavors import STANDARD_FLAVORS
from gcdim.genfun import evaluate
from gcdim.rings import RationalRing, ResidueRing
from gcdim.series import Truncation

_t10_cache: dict = {}


def tables_b10_timed():
    """All-graphs dimension tables for every flavor at b <= 10, computed
    once per test session on the modular backend, with the wall time of
    the generating-function evaluations."""
    if not _t10_cache:
        ring = ResidueRing()
        trunc = Truncation(20, 30)
        start = time.monotonic()
        tables = {
            name: DimTable.from_genfun(evaluate(flavor, trunc, ring))
            for name, flavor in STANDARD_FLAVORS.items()
        }
        _t10_cache["tables"] = tables
        _t10_cache["elapsed"] = time.monotonic() - start
    return _t10_cache["tables"], _t10_cache["elapsed"]


@pytest.fixture(scope="session")
def rational_ring():
    return RationalRing()


@pytest.fixture(scope="session")
def modular_ring():
    return ResidueRing()


@pytest.fixture(scope="session")
def tables_b10():
    return tables_b10_timed()[0]


@pytest.fixture(scope="session")
def euler_b10(tables_b10):
    return {name: euler_from_dims(t, b_max=10) for name, t in tables_b10.items()}
