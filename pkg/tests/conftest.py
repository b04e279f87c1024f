import numpy as np
import pytest

from moreau.tolerances import Tolerances

SEED = 20240517


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def loose():
    # for comparisons that run through several SVDs
    return Tolerances(value_tol=1e-8)
