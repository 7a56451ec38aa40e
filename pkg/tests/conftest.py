from fractions import Fraction

import pytest

from qfusion.roots import Weight
from qfusion.uqg_core import UqAlgebra


def W(*c, direction=None):
    return Weight(tuple(Fraction(x) for x in c), None if direction is None else tuple(direction))


@pytest.fixture
def sl2():
    return UqAlgebra("A1", 4)


@pytest.fixture
def a2():
    return UqAlgebra("A2", 4)
