"""Shared fixtures and helpers for the qdiscord test suite."""

import numpy as np
import pytest

# |Phi+> Bell state.
BELL = np.array(
    [
        [0.5, 0.0, 0.0, 0.5],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.5, 0.0, 0.0, 0.5],
    ],
    dtype=complex,
)

# Fixed dense full-rank state used as a frozen regression target.  Its
# conditional-entropy landscape has two degenerate global minima, which
# exercises the candidate-deduplication path of the solver.
REFERENCE_STATE = np.array(
    [
        [0.437, 0.126 + 0.197j, 0.0271 - 0.0258j, -0.274 + 0.0997j],
        [0.126 - 0.197j, 0.154, -0.0115 - 0.0187j, -0.0315 + 0.170j],
        [0.0271 + 0.0258j, -0.0115 + 0.0187j, 0.0370, 0.00219 - 0.0367j],
        [-0.274 - 0.0997j, -0.0315 - 0.170j, 0.00219 + 0.0367j, 0.372],
    ],
    dtype=complex,
)


def werner(z):
    """Werner state z|Phi+><Phi+| + (1-z) I/4."""
    return z * BELL + (1.0 - z) * np.eye(4) / 4.0


def haar_unitary(rng, dim):
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_density(rng, rank=4, dim=4):
    """Random density matrix of the given rank (Ginibre construction)."""
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, dim=4):
    """Haar-random pure-state density matrix."""
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_bloch_qubit(rng):
    """Qubit density matrix with Bloch vector uniform in the unit ball."""
    v = rng.standard_normal(3)
    v *= rng.random() ** (1.0 / 3.0) / np.linalg.norm(v)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return 0.5 * (np.eye(2) + v[0] * sx + v[1] * sy + v[2] * sz)


def classical_quantum(rng):
    """State sum_i p_i rho_Ai x |i><i| that is classical on qubit B."""
    p0 = rng.random()
    basis = haar_unitary(rng, 2)
    rho = np.zeros((4, 4), dtype=complex)
    for i, w in enumerate((p0, 1.0 - p0)):
        proj = np.outer(basis[:, i], basis[:, i].conj())
        rho += w * np.kron(random_bloch_qubit(rng), proj)
    return rho


def binary_entropy(p):
    """Shannon entropy of a bit in bits."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p)


@pytest.fixture(scope="session")
def reference_state():
    """The frozen dense regression state."""
    return REFERENCE_STATE.copy()
