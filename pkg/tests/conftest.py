import numpy as np
import pytest

from zharm.sequences import Sequence


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random17(rng):
    return Sequence(lo=-8, values=rng.standard_normal(17))


def torus_coefficient(mult_fn, n, nodes=1 << 15):
    """Plain-trapezoid torus coefficient, independent of zharm.spectral.

    (1/2pi) integral_0^2pi mult_fn(theta) e^{-in theta} dtheta on an
    equispaced grid; used as the independent oracle for kernel values.
    """
    theta = 2.0 * np.pi * (np.arange(nodes) + 0.5) / nodes  # midpoint grid
    vals = mult_fn(theta) * np.exp(-1j * n * theta)
    return complex(np.mean(vals))
