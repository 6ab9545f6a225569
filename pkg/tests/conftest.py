import pytest

from pfractal import IdealFamily, Ring


@pytest.fixture
def F3xy():
    return Ring(3, ["x", "y"])


@pytest.fixture
def staircase(F3xy):
    """The F_3[x,y] pair ((x+y), (xy)) whose region boundary is a staircase."""
    return IdealFamily(F3xy, [
        F3xy.ideal(F3xy.polynomial("x+y")),
        F3xy.ideal(F3xy.polynomial("x*y")),
    ])


@pytest.fixture
def maximal(F3xy):
    return F3xy.ideal(F3xy.polynomial("x"), F3xy.polynomial("y"))
