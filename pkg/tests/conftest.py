import pytest

from vlab.engine import EngineContext
from vlab.perm import alternating_group, cyclic_group, pad_permutation


@pytest.fixture(scope="session")
def ctx():
    return EngineContext.bundled()


@pytest.fixture(scope="session")
def a5():
    return alternating_group(5)


@pytest.fixture(scope="session")
def a4_in_a5(a5):
    gens = [pad_permutation(g, 5) for g in alternating_group(4).generators]
    return a5.subgroup(gens, name="A4<A5")


@pytest.fixture(scope="session")
def c4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def c2_in_c4(c4):
    return c4.subgroup([c4.generators[0] ** 2], name="C2<C4")
