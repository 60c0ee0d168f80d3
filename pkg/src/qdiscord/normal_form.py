"""Reduction of a two-qubit state to its nine-parameter Bloch normal form.

Local unitary rotations on either qubit act on the Bloch expansion as
orthogonal rotations of the A and B frames.  Diagonalizing the 3x3
correlation block by SVD therefore brings every state to the form

    rho = (1/4) (I + sum_i a_i sigma_i x I + sum_i b_i I x sigma_i
                   + sum_i c_i sigma_i x sigma_i)

parametrized by the two local Bloch vectors ``a``, ``b`` and the diagonal
correlations ``c``.  Correlation-derived quantities (discord, geometric
discord, entropies) are invariant under the reduction.

Sign and ordering conventions (ours, fixed for reproducibility):

* ``|c_1| >= |c_2| >= |c_3|`` (singular values descending);
* the determinant corrections of both frames are absorbed into the sign
  of ``c_3``, so at most the last component is negative before the
  discrete canonicalization step;
* residual frame freedom (tied or zero singular values, paired sign
  flips) is resolved by choosing the lexicographically largest rounded
  ``(a, b)``, aligning tied blocks so trailing components vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import (
    BlochMatrix,
    bloch_compose,
    bloch_decompose,
    validate_density,
)

__all__ = ["NormalForm", "LocalFrame", "to_normal_form", "reconstruct"]

# Singular values closer than this (absolutely) are treated as tied; frame
# freedom inside tied blocks is then fixed by the canonicalization below.
TIE_TOL = 1e-10

# Components smaller than this are treated as zero during canonicalization.
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class NormalForm:
    """Bloch normal form: local vectors ``a``, ``b`` and diagonal correlations ``c``."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class LocalFrame:
    """Special-orthogonal frame rotations (O_A, O_B) recording the reduction."""

    o_a: np.ndarray
    o_b: np.ndarray

    def __post_init__(self):
        for name in ("o_a", "o_b"):
            o = np.asarray(getattr(self, name), dtype=float)
            if o.shape != (3, 3):
                raise ValueError(f"{name} must be 3x3, got shape {o.shape}")
            if np.max(np.abs(o @ o.T - np.eye(3))) > 1e-12:
                raise ValueError(f"{name} is not orthogonal")
            if abs(np.linalg.det(o) - 1.0) > 1e-12:
                raise ValueError(f"{name} must have determinant +1")
            object.__setattr__(self, name, o)


def _align_rotation_2d(v):
    """2x2 rotation W with W^T v = (|v|, 0)."""
    r = float(np.hypot(v[0], v[1]))
    if r < ZERO_TOL:
        return np.eye(2)
    return np.array([[v[0] / r, -v[1] / r], [v[1] / r, v[0] / r]])


def _align_rotation_3d(v):
    """3x3 right-handed rotation W with W^T v = (|v|, 0, 0)."""
    r = float(np.linalg.norm(v))
    if r < ZERO_TOL:
        return np.eye(3)
    u = np.asarray(v, dtype=float) / r
    # Deterministic completion: strongest column of the projector I - u u^T,
    # then the cross product closes a right-handed frame (det +1 for free).
    proj = np.eye(3) - np.outer(u, u)
    col = int(np.argmax(np.sum(proj * proj, axis=0)))
    w2 = proj[:, col] / np.linalg.norm(proj[:, col])
    return np.column_stack([u, w2, np.cross(u, w2)])


def _embed(block, idx):
    """Embed a small orthogonal block into identity at positions ``idx``."""
    w = np.eye(3)
    for r, i in enumerate(idx):
        for s, j in enumerate(idx):
            w[i, j] = block[r, s]
    return w


def _axis_rotation_about_first(v):
    """Rotation about axis 0 sending v to (v0, hypot(v1, v2), 0)."""
    h = float(np.hypot(v[1], v[2]))
    if h < ZERO_TOL:
        return np.eye(3)
    cs, sn = v[1] / h, v[2] / h
    return np.array([[1.0, 0.0, 0.0], [0.0, cs, -sn], [0.0, sn, cs]])


def _tie_groups(values, tol):
    """Consecutive index groups of (signed) values equal within ``tol``."""
    groups, start = [], 0
    for i in range(1, 3):
        if abs(values[i] - values[start]) > tol:
            groups.append(list(range(start, i)))
            start = i
    groups.append(list(range(start, 3)))
    return groups


def _canonicalize_continuous(a, b, c, o_a, o_b):
    """Fix rotational freedom inside tied / zero singular-value blocks.

    Equal signed ``c`` entries admit a simultaneous rotation of both
    frames; zero entries admit independent rotations of each frame.  Both
    freedoms are spent aligning ``a`` (and then ``b``) so that trailing
    components inside each block vanish, which makes the form a fixed
    point of the reduction.
    """
    zero = [i for i in range(3) if abs(c[i]) <= TIE_TOL]
    nonzero = [i for i in range(3) if abs(c[i]) > TIE_TOL]

    # Simultaneous rotations inside blocks of equal signed correlations.
    for grp in _tie_groups(c, TIE_TOL):
        grp = [i for i in grp if i in nonzero]
        if len(grp) < 2:
            continue
        lead = a if np.linalg.norm(a[grp]) >= ZERO_TOL else b
        if len(grp) == 2:
            w = _embed(_align_rotation_2d(lead[grp]), grp)
        else:
            w = _align_rotation_3d(lead[grp])
            if lead is a and np.linalg.norm(a[grp]) >= ZERO_TOL:
                # Residual rotation about the aligned axis fixes b.
                w = w @ _axis_rotation_about_first(w.T @ b)
        a, b = w.T @ a, w.T @ b
        o_a, o_b = o_a @ w, o_b @ w

    # Independent per-side rotations inside the zero block.
    if len(zero) >= 2:
        if len(zero) == 2:
            wa = _embed(_align_rotation_2d(a[zero]), zero)
            wb = _embed(_align_rotation_2d(b[zero]), zero)
        else:
            wa = _align_rotation_3d(a)
            wb = _align_rotation_3d(b)
        a, o_a = wa.T @ a, o_a @ wa
        b, o_b = wb.T @ b, o_b @ wb

    return a, b, c, o_a, o_b


def _canonicalize_signs(a, b, c, o_a, o_b):
    """Pick the lexicographically largest (a, b) over allowed sign flips.

    Allowed flips are diagonal +-1 pairs (P, Q) with det P = det Q = +1
    and P diag(c) Q = diag(c): signs must agree wherever c_i is nonzero
    and are free where c_i vanishes.
    """
    zero = [abs(ci) <= TIE_TOL for ci in c]
    even = [s for s in product((1.0, -1.0), repeat=3) if s[0] * s[1] * s[2] > 0]
    best = None
    for p in even:
        for q in even:
            if any(not z and p[i] != q[i] for i, z in enumerate(zero)):
                continue
            cand_a = np.asarray(p) * a
            cand_b = np.asarray(q) * b
            key = tuple(np.round(cand_a, 9)) + tuple(np.round(cand_b, 9))
            if best is None or key > best[0]:
                best = (key, np.asarray(p), np.asarray(q))
    _, p, q = best
    return p * a, q * b, c, o_a * p, o_b * q


def to_normal_form(rho):
    """Reduce a two-qubit density matrix to Bloch normal form.

    Parameters
    ----------
    rho : array_like
        Valid 4x4 density matrix.

    Returns
    -------
    (NormalForm, LocalFrame)
        Canonical parameters (a, b, c) and the special-orthogonal frame
        rotations such that ``O_A^T T O_B = diag(c)``, ``a = O_A^T x``,
        ``b = O_B^T y``.
    """
    blo = bloch_decompose(rho)
    x, y, t = blo.x, blo.y, blo.t

    u, s, vt = np.linalg.svd(t)
    v = vt.T
    c = s.copy()
    # Push both determinant corrections into the sign of c_3.
    if np.linalg.det(u) < 0:
        u = u.copy()
        u[:, 2] *= -1.0
        c[2] *= -1.0
    if np.linalg.det(v) < 0:
        v = v.copy()
        v[:, 2] *= -1.0
        c[2] *= -1.0

    a = u.T @ x
    b = v.T @ y
    a, b, c, o_a, o_b = _canonicalize_continuous(a, b, c, u, v)
    a, b, c, o_a, o_b = _canonicalize_signs(a, b, c, o_a, o_b)

    off = o_a.T @ t @ o_b - np.diag(c)
    if np.max(np.abs(off)) > 1e-10:
        raise RuntimeError(
            f"normal-form reduction failed: residual {np.max(np.abs(off)):.3e}"
        )
    return NormalForm(a, b, c), LocalFrame(o_a, o_b)


def reconstruct(nf: NormalForm) -> np.ndarray:
    """Assemble the density matrix of a normal form.

    Raises
    ------
    NotPositiveError
        If (a, b, c) does not describe a physical state.
    """
    r = np.eye(4)
    r[1:, 0] = nf.a
    r[0, 1:] = nf.b
    r[1:, 1:] = np.diag(nf.c)
    return bloch_compose(BlochMatrix(r))


def normal_form_of(rho):
    """Convenience wrapper returning only the NormalForm part."""
    nf, _ = to_normal_form(validate_density(rho))
    return nf
