import pytest

from pairspec import _kernels, catalog


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once here so timed sections measure the
    # algorithms, not LLVM.
    _kernels.warm_up()


@pytest.fixture(scope="session")
def pairs():
    return catalog.build_all()


@pytest.fixture(scope="session")
def sb(pairs):
    return pairs["super_boolean"]
