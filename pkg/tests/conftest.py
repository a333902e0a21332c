import numpy as np
import pytest

from quatcongruence.hermspace import HermitianSpace


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def h2():
    return HermitianSpace(2)
