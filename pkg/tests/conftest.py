import numpy as np
import pytest

from mdi_asymmetry import _backend
from mdi_asymmetry.model import canonical_hamiltonian


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def ham():
    return canonical_hamiltonian()


@pytest.fixture(params=["cython", "python"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend, skipping backends that are not built."""
    try:
        mod = _backend.load_backend(request.param)
    except ImportError:
        pytest.skip(f"{request.param} backend not built")
    monkeypatch.setattr(_backend, "kernels", mod)
    return mod
