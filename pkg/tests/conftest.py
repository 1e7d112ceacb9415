import pytest

from sidonpairs.groups import AmbientGroup, Factor


@pytest.fixture
def Z():
    return AmbientGroup.integers()


@pytest.fixture
def sum_z2():
    return AmbientGroup.direct_sum(Factor.cyclic(2))


@pytest.fixture
def sum_z3():
    return AmbientGroup.direct_sum(Factor.cyclic(3))
