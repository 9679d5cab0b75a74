import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from augtree import gadgets  # noqa: E402


@pytest.fixture(scope="session")
def jk3():
    return gadgets.build_Jk(3, 4)


@pytest.fixture(scope="session")
def gk3():
    return gadgets.build_Gk(3, 4)


@pytest.fixture(scope="session")
def listcap3():
    return gadgets.build_listcap(3, 4)


@pytest.fixture(scope="session")
def hk3():
    return gadgets.build_Hk_smallunion(3, 4)


@pytest.fixture(scope="session")
def hyper32():
    return gadgets.build_hypergraph(3, 2)


@pytest.fixture(scope="session")
def hyper22():
    return gadgets.build_hypergraph(2, 2)
