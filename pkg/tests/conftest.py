import numpy as np
import pytest

from qwtransfer import kernels
from qwtransfer._accel import NUMBA_AVAILABLE

BACKENDS = ["numpy", "numba"] if NUMBA_AVAILABLE else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return kernels.BACKENDS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_state(rng, dim):
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)
