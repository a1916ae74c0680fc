import pytest

from halinkit.perms import Permutation
from halinkit.groups import PermGroup


def dihedral(n):
    """Dihedral group acting on the n-cycle's vertices."""
    rot = Permutation([(i + 1) % n for i in range(n)])
    refl = Permutation([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, refl])


@pytest.fixture
def d8():
    return dihedral(8)


@pytest.fixture
def d6():
    return dihedral(6)


@pytest.fixture
def d5():
    return dihedral(5)
