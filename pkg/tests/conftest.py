import numpy as np
import pytest

from noonforge import evolution_operator, reference, unitarize


@pytest.fixture(scope="session")
def splitter_i():
    """The bundled subspace-I scattering matrix, as stored (near-unitary)."""
    return reference.bundled_matrix(reference.SPLITTER_I).to_array()


@pytest.fixture(scope="session")
def splitter_ii():
    """The bundled subspace-II scattering matrix, as stored (near-unitary)."""
    return reference.bundled_matrix(reference.SPLITTER_II).to_array()


@pytest.fixture(scope="session")
def operator_ii(splitter_ii):
    """Unitarized subspace-II splitter oriented for Fock evolution."""
    return evolution_operator(unitarize(splitter_ii))


@pytest.fixture(scope="session")
def symmetric_splitter():
    """The symmetric 50/50 two-port splitter."""
    return np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex) / np.sqrt(2)


@pytest.fixture(scope="session")
def hadamard_splitter():
    """The real 50/50 two-port splitter."""
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2)
