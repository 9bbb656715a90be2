import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from selfnorm import builtin_catalog, preset, resolve_group  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def groups():
    """Named groups shared across tests; lattices are cached on the objects."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = resolve_group(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def a5():
    return preset("A5")


@pytest.fixture(scope="session")
def s4():
    return preset("S4")
