import math

import pytest

EPS0 = math.sqrt(6.0) - 2.0
EPS_POLE = math.sqrt(5.0) - 2.0


@pytest.fixture
def eps0():
    return EPS0
