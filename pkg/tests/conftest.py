import numpy as np
import pytest

from cartan_qubit import _backend


def haar_unitary(rng, n=4):
    """Haar-distributed U(n) from the QR decomposition of a Ginibre matrix."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_su2(rng):
    u = haar_unitary(rng, 2)
    return u / np.sqrt(np.linalg.det(u))


def random_hermitian(rng, n=4, scale=1.0):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (z + z.conj().T) / 2


def random_state(rng, n=4):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=sorted(_backend.available_kernels()))
def kernels(request, monkeypatch):
    """Runs a test once per importable kernel backend."""
    mod = _backend.available_kernels()[request.param]
    monkeypatch.setattr(_backend, "kernels", mod)
    return mod


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
