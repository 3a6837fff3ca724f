import numpy as np
import pytest


def random_unitary(rng):
    """Haar 2x2 unitary via QR of a complex Gaussian."""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_matrix(rng, scale=1.0):
    return scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))


def random_state_vec(rng, dim=2):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
