import numpy as np
import pytest

from lgbeams import BeamParams, ModeIndex, default_grid, eval_lg_mode, normalized, add, scale


@pytest.fixture(scope="session")
def params():
    # k=2, b=1 => w0 = 1, so hand calculations match sample values
    return BeamParams(k=2.0, b=1.0)


@pytest.fixture(scope="session")
def grid(params):
    # n=128 resolves modes up to order ~9 on an 8 w0 window; unit tests
    # stay fast and the full n=512 rig is exercised by the acceptance suite
    return default_grid(params, 0.0, n=128)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)


def random_band_limited(params, grid, rng, order=4):
    """Random smooth decaying field: mode superposition with random coeffs."""
    coeffs = None
    field = None
    for l in range(-order, order + 1):
        for p in range((order - abs(l)) // 2 + 1):
            c = complex(rng.standard_normal(), rng.standard_normal())
            mode = scale(eval_lg_mode(ModeIndex(l, p), params, grid, 0.0), c)
            field = mode if field is None else add(field, mode)
    return normalized(field)
