import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_entry = st.floats(-3, 3, allow_nan=False, allow_infinity=False, width=64)


@st.composite
def complex_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    re = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
    im = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
    return re + 1j * im


@st.composite
def matrix_pairs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    mats = []
    for _ in range(2):
        re = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
        im = draw(hnp.arrays(np.float64, (n, n), elements=_entry))
        mats.append(re + 1j * im)
    return mats


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def psd(rng, n, rank=None):
    X = ginibre(rng, n)[: (rank or n)]
    return X.conj().T @ X
