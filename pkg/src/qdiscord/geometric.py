"""Geometric discord: closed form, normal-form shortcut, and a Monte Carlo oracle.

The geometric discord is the squared Hilbert-Schmidt distance from a state
to the nearest classical-quantum state (one that is invariant under some
projective measurement on qubit B).  For two qubits it has the closed form

    D_G = (1/4) (|y|^2 + ||T||_F^2 - k_max)

where y is the Bloch vector of the measured qubit B, T the correlation
block, and k_max the largest eigenvalue of y y^T + T^T T.  Its normalized
variant 2 D_G ranges over [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PAULI, bloch_decompose, validate_density
from .normal_form import NormalForm

__all__ = [
    "GeometricResult",
    "geometric_discord",
    "geometric_discord_nf",
    "min_distance_bruteforce",
]


@dataclass(frozen=True)
class GeometricResult:
    """Geometric discord output: raw value (in [0, 1/2]), normalized, and k_max."""

    dg: float
    dg_normalized: float
    k_max: float
    side: str = "B"


def _assemble(y, tsq_fro, kmat, side) -> GeometricResult:
    k_max = float(np.linalg.eigvalsh(kmat)[-1])
    dg = 0.25 * (float(y @ y) + tsq_fro - k_max)
    dg = max(dg, 0.0)
    return GeometricResult(dg=dg, dg_normalized=2.0 * dg, k_max=k_max, side=side)


def geometric_discord(rho, side: str = "B") -> GeometricResult:
    """Closed-form geometric discord of a two-qubit state.

    Parameters
    ----------
    rho : array_like
        4x4 density matrix.
    side : {"B", "A"}
        Measured subsystem.  For side A the roles swap: the local vector
        x replaces y and T T^T replaces T^T T.
    """
    rho = validate_density(rho)
    blo = bloch_decompose(rho)
    t = blo.t
    tsq = float(np.sum(t * t))
    if side == "B":
        return _assemble(blo.y, tsq, np.outer(blo.y, blo.y) + t.T @ t, side)
    if side == "A":
        return _assemble(blo.x, tsq, np.outer(blo.x, blo.x) + t @ t.T, side)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def geometric_discord_nf(nf: NormalForm, side: str = "B") -> GeometricResult:
    """Geometric discord straight from normal-form parameters.

    For a state in normal form the correlation block is diag(c), so the
    matrix under the largest-eigenvalue operation reduces to
    ``b b^T + diag(c^2)`` (side B).  Equals geometric_discord of the
    reconstructed state to 1e-12.
    """
    csq = np.diag(nf.c * nf.c)
    tsq = float(nf.c @ nf.c)
    if side == "B":
        return _assemble(nf.b, tsq, np.outer(nf.b, nf.b) + csq, side)
    if side == "A":
        return _assemble(nf.a, tsq, np.outer(nf.a, nf.a) + csq, side)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def min_distance_bruteforce(rho, samples: int, seed: int = 0, batch: int = 50000) -> float:
    """Monte Carlo upper bound on the distance to the classical-quantum set.

    Draws random classical-quantum states ``chi = sum_i p_i rho_Ai x |i><i|``
    with mixing weights uniform on the simplex, qubit-A states uniform
    over the Bloch ball, and the basis {|i>} from a uniformly random
    rotation; returns the smallest squared Hilbert-Schmidt distance seen.

    The result is always >= the closed-form geometric discord (it is a
    minimum over a subset of the classical-quantum set) and converges
    toward it as ``samples`` grows; empirically the one-sided gap is
    below ~3e-2 at 1e6 samples.  The stream is deterministic for fixed
    ``seed`` and ``batch``, and two runs sharing both parameters draw a
    common prefix, so the minimum is nonincreasing in ``samples``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rho = validate_density(rho)
    sig = np.array(PAULI[1:])
    eye = np.eye(2)
    best = np.inf
    done = 0
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    while done < samples:
        m = min(batch, samples - done)
        done += m
        p0 = rng.uniform(0.0, 1.0, m)
        vec = rng.normal(size=(2, m, 3))
        vec /= np.linalg.norm(vec, axis=2, keepdims=True)
        vec *= rng.uniform(0.0, 1.0, (2, m, 1)) ** (1.0 / 3.0)
        ra = 0.5 * (eye[None, None] + np.einsum("smk,kij->smij", vec, sig))
        z = rng.normal(size=(m, 2, 2)) + 1j * rng.normal(size=(m, 2, 2))
        q, r = np.linalg.qr(z)
        diag = r[:, (0, 1), (0, 1)]
        q = q * (diag / np.abs(diag))[:, None, :]
        proj0 = np.einsum("mi,mj->mij", q[:, :, 0], q[:, :, 0].conj())
        proj1 = np.einsum("mi,mj->mij", q[:, :, 1], q[:, :, 1].conj())
        chi = (
            p0[:, None, None, None, None]
            * np.einsum("mij,mkl->mikjl", ra[0], proj0)
            + (1.0 - p0)[:, None, None, None, None]
            * np.einsum("mij,mkl->mikjl", ra[1], proj1)
        ).reshape(m, 4, 4)
        dist = np.sum(np.abs(chi - rho[None]) ** 2, axis=(1, 2))
        best = min(best, float(dist.min()))
    return best
