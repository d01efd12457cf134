import numpy as np
import pytest

from taumod.precision import PrecisionContext


@pytest.fixture
def ctx():
    return PrecisionContext()


@pytest.fixture
def rng():
    return np.random.default_rng(42)
