import numpy as np
import pytest
from scipy.linalg import expm


def ladder(n_basis: int) -> np.ndarray:
    a = np.zeros((n_basis, n_basis))
    ns = np.arange(1, n_basis)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


@pytest.fixture(scope="session")
def displacement_bruteforce():
    """<m| exp(i eta (a+a^dag)) |n> via a dense matrix exponential."""

    def build(eta: float, n_basis: int = 40) -> np.ndarray:
        a = ladder(n_basis)
        return expm(1j * eta * (a + a.T))

    return build


@pytest.fixture(scope="session")
def squeeze_bruteforce():
    """exp[i (phase/2) (a^dag a^dag + a a)] |0> via a dense matrix exponential."""

    def build(phase: float, n_basis: int = 256) -> np.ndarray:
        a = ladder(n_basis)
        gen = 1j * 0.5 * phase * (a.T @ a.T + a @ a)
        vac = np.zeros(n_basis)
        vac[0] = 1.0
        return expm(gen) @ vac

    return build
