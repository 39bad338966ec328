import mpmath
import numpy as np
import pytest


@pytest.fixture(autouse=True)
def working_precision():
    """Run every test at the default working precision of the command line."""
    with mpmath.workprec(106):
        yield


@pytest.fixture
def rng():
    return np.random.default_rng(0)
