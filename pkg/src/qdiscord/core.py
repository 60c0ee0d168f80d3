"""Two-qubit density-matrix substrate: validation, Pauli/Bloch algebra, entropies.

Conventions used across the package (asserted by the test suite):

* product basis ordering ``|00>, |01>, |10>, |11>`` with qubit A as the
  left tensor factor;
* Pauli ordering ``sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z``;
* all entropies in bits (log base 2), never natural log at the API surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "StateValidationError",
    "NotHermitianError",
    "TraceNotOneError",
    "NotPositiveError",
    "PAULI",
    "BlochMatrix",
    "validate_density",
    "bloch_decompose",
    "bloch_compose",
    "partial_trace",
    "von_neumann_entropy",
    "mutual_information",
    "load_state_json",
    "dump_state_json",
]

# Numerical tolerances for the DensityMatrix invariants.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10

# Arguments at or below this value contribute exactly 0 to x*log2(x) sums.
XLOG_CUTOFF = 1e-15

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

# kron(sigma_i, sigma_j) for all 16 index pairs, laid out as a (4, 4, 4, 4)
# array indexed [i, j] so that bloch_decompose is a single tensor contraction.
_PAULI_KRON = np.array(
    [[np.kron(PAULI[i], PAULI[j]) for j in range(4)] for i in range(4)]
)


class StateValidationError(ValueError):
    """A candidate density matrix violates one of its invariants."""


class NotHermitianError(StateValidationError):
    """Hermiticity violated beyond tolerance."""


class TraceNotOneError(StateValidationError):
    """Trace differs from one beyond tolerance."""


class NotPositiveError(StateValidationError):
    """An eigenvalue is negative beyond tolerance."""


def validate_density(m) -> np.ndarray:
    """Validate a 4x4 complex matrix as a two-qubit density matrix.

    Parameters
    ----------
    m : array_like
        Candidate matrix in the product basis ``|00>, |01>, |10>, |11>``.

    Returns
    -------
    numpy.ndarray
        The validated matrix (complex, C-contiguous).  Eigenvalues in
        ``(-1e-10, 0)`` are clamped to zero and the matrix renormalized to
        unit trace, so downstream code may assume exact positivity.

    Raises
    ------
    NotHermitianError, TraceNotOneError, NotPositiveError
        Naming the violated invariant and its magnitude.
    ValueError
        If the shape is not 4x4.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    herm = np.max(np.abs(m - m.conj().T))
    if herm > HERMITICITY_TOL:
        raise NotHermitianError(
            f"not Hermitian: max |m - m^dagger| = {herm:.3e} > {HERMITICITY_TOL:.0e}"
        )
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOneError(
            f"trace not one: |Tr - 1| = {abs(tr - 1.0):.3e} > {TRACE_TOL:.0e}"
        )
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    if w[0] < PSD_FLOOR:
        raise NotPositiveError(
            f"not positive semidefinite: smallest eigenvalue = {w[0]:.3e} < {PSD_FLOOR:.0e}"
        )
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        m = (v * w) @ v.conj().T
    return np.ascontiguousarray(m)


@dataclass(frozen=True)
class BlochMatrix:
    """Real 4x4 correlation matrix R with R[i, j] = Tr[rho (sigma_i x sigma_j)].

    The block layout is ``[[1, y^T], [x, T]]``: row 0 carries the Bloch
    vector of qubit B, column 0 the Bloch vector of qubit A, and the lower
    3x3 block the correlation tensor T.
    """

    r: np.ndarray

    @property
    def x(self) -> np.ndarray:
        """Bloch vector of qubit A (column block R[1:, 0])."""
        return self.r[1:, 0]

    @property
    def y(self) -> np.ndarray:
        """Bloch vector of qubit B (row block R[0, 1:])."""
        return self.r[0, 1:]

    @property
    def t(self) -> np.ndarray:
        """3x3 correlation block R[1:, 1:]."""
        return self.r[1:, 1:]


def bloch_decompose(rho) -> BlochMatrix:
    """Expand a density matrix over the Pauli product basis.

    Parameters
    ----------
    rho : array_like
        Valid 4x4 density matrix.

    Returns
    -------
    BlochMatrix
        R with entries Tr[rho (sigma_i x sigma_j)]; the imaginary residue
        of every entry must be below 1e-12 and is discarded after the check.
    """
    rho = np.asarray(rho, dtype=complex)
    raw = np.einsum("kl,ijlk->ij", rho, _PAULI_KRON)
    resid = np.max(np.abs(raw.imag))
    if resid > 1e-12:
        raise NotHermitianError(
            f"Bloch coefficients not real: max imaginary residue {resid:.3e}"
        )
    return BlochMatrix(np.ascontiguousarray(raw.real))


def bloch_compose(r) -> np.ndarray:
    """Rebuild a density matrix from its Pauli expansion coefficients.

    Parameters
    ----------
    r : BlochMatrix or array_like
        Real 4x4 coefficient matrix with r[0, 0] = 1.

    Returns
    -------
    numpy.ndarray
        The validated density matrix ``(1/4) sum_ij R_ij sigma_i x sigma_j``.

    Raises
    ------
    NotPositiveError
        If the coefficients encode a non-physical matrix.
    """
    if isinstance(r, BlochMatrix):
        r = r.r
    r = np.asarray(r, dtype=float)
    if r.shape != (4, 4):
        raise ValueError(f"expected a 4x4 coefficient matrix, got shape {r.shape}")
    if abs(r[0, 0] - 1.0) > TRACE_TOL:
        raise TraceNotOneError(f"R[0,0] must be 1, got {r[0, 0]!r}")
    rho = 0.25 * np.einsum("ij,ijkl->kl", r, _PAULI_KRON)
    return validate_density(rho)


def partial_trace(rho, keep: str = "A") -> np.ndarray:
    """Trace out one qubit of a two-qubit state.

    Parameters
    ----------
    rho : array_like
        4x4 density matrix.
    keep : {"A", "B"}
        Which marginal to return; A is the left tensor factor.

    Returns
    -------
    numpy.ndarray
        2x2 marginal density matrix.
    """
    rho = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ikjk->ij", rho)
    if keep == "B":
        return np.einsum("kikj->ij", rho)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _xlog2x(w: np.ndarray) -> np.ndarray:
    """Entrywise x*log2(x) with the 0*log(0) = 0 convention."""
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    big = w > XLOG_CUTOFF
    out[big] = w[big] * np.log2(w[big])
    return out


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy -Tr[rho log2 rho] in bits.

    Eigenvalues in (-1e-10, 0) are clamped to zero before the logarithm.
    """
    w = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    if w[0] < PSD_FLOOR:
        raise NotPositiveError(
            f"not positive semidefinite: smallest eigenvalue = {w[0]:.3e}"
        )
    return float(-np.sum(_xlog2x(np.clip(w, 0.0, None))))


def mutual_information(rho) -> float:
    """Quantum mutual information S(A) + S(B) - S(A,B) in bits."""
    rho = np.asarray(rho, dtype=complex)
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def load_state_json(source) -> np.ndarray:
    """Read a density matrix from the JSON interchange format.

    The format is ``{"matrix": [[[re, im], ... x4], ... x4]}`` row-major.
    Shape is rejected before physical validation so that malformed files
    produce a clear parse error rather than a numeric one.

    Parameters
    ----------
    source : str or file-like
        Path to a JSON file, or an open text handle.

    Returns
    -------
    numpy.ndarray
        Validated 4x4 density matrix.
    """
    if hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise ValueError("state JSON must be an object with a 'matrix' key")
    arr = doc["matrix"]
    try:
        arr = np.asarray(arr, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"state JSON 'matrix' is not numeric: {exc}") from exc
    if arr.shape != (4, 4, 2):
        raise ValueError(
            f"state JSON 'matrix' must have shape 4x4x2 ([re, im] entries), got {arr.shape}"
        )
    return validate_density(arr[..., 0] + 1j * arr[..., 1])


def dump_state_json(rho, target) -> None:
    """Write a density matrix in the JSON interchange format.

    Parameters
    ----------
    rho : array_like
        4x4 density matrix.
    target : str or file-like
        Path to write, or an open text handle.
    """
    rho = np.asarray(rho, dtype=complex)
    doc = {"matrix": np.stack([rho.real, rho.imag], axis=-1).tolist()}
    if hasattr(target, "write"):
        json.dump(doc, target)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
