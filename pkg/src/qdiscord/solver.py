"""Conditional-entropy surface over projective measurements and its minimization.

A projective measurement on qubit B is parametrized by two angles
``theta in [0, pi/2), phi in [0, 2*pi)`` through the direction

    X(theta, phi) = (sin 2theta cos phi, sin 2theta sin phi, cos 2theta).

For a state in Bloch normal form (a, b, c) the two measurement outcomes
occur with probabilities (1 -+ p)/2 where ``p = b . X``, and the
conditional states of qubit A have Bloch vectors proportional to
``m_-+ = a -+ c * X`` with norms ``r_-+``.  The average post-measurement
entropy (the conditional entropy S~) and its exact angular gradient are
evaluated in closed form below; the global minimum over the torus gives
the classical correlations and hence the quantum discord.

The half-period identity S~(theta + pi/2, phi) = S~(theta, phi) holds
exactly (the direction flips sign, which merely swaps the two outcomes),
so the search domain is the reduced torus.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from enum import Enum

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .core import (
    partial_trace,
    validate_density,
    von_neumann_entropy,
)
from .normal_form import NormalForm, to_normal_form

__all__ = [
    "MeasurementAngles",
    "MeasurementGeometry",
    "EnsembleAfterMeasurement",
    "StationaryPoint",
    "HessianSignature",
    "DiscordResult",
    "SolverConfig",
    "SingularDeterminantError",
    "angles_to_hjk",
    "measurement_geometry",
    "conditional_entropy",
    "conditional_entropy_grid",
    "conditional_entropy_gradient",
    "ensemble_after_measurement",
    "stationarity_residuals",
    "minimize_conditional_entropy",
    "quantum_discord",
]

LOG2 = math.log(2.0)

# x*log2(x) terms with x at or below this cutoff contribute exactly 0.
XLOG_CUTOFF = 1e-15

# Outcome probabilities below this are degenerate: the branch contributes 0.
DEGENERATE_PROB = 1e-12

# Jacobian determinants below this make the divided stationarity system singular.
SINGULAR_DET = 1e-12

# Permutation matrix exchanging the two qubits in the product basis.
SWAP = np.eye(4)[[0, 2, 1, 3]]


class SingularDeterminantError(ArithmeticError):
    """The divided stationarity system is singular at the requested angles.

    Raised when either Jacobian determinant entering the divided form
    vanishes (or a conditional eigenvalue sits exactly at 0 or 1, where
    the exponentiated ratios are undefined).  Callers needing stationarity
    information there must fall back to the raw gradient system
    dS~/dtheta = dS~/dphi = 0, which this module's minimizer uses anyway.
    """


@dataclass(frozen=True)
class MeasurementAngles:
    """Measurement direction angles, canonical domain theta in [0, pi/2), phi in [0, 2pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta < math.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2), got {self.theta!r}")
        if not (0.0 <= self.phi < 2 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi!r}")


@dataclass(frozen=True)
class MeasurementGeometry:
    """Derived measurement quantities at fixed angles.

    Attributes
    ----------
    x_dir : unit direction X of the projector pair (outcome 0 projects
        along -X, outcome 1 along +X).
    m_plus, m_minus : Bloch vectors a +- c*X of the unnormalized
        conditional states.
    p : overlap b . X, so the outcome probabilities are (1 -+ p)/2.
    r_plus, r_minus : norms of m_plus, m_minus.
    """

    x_dir: np.ndarray
    m_plus: np.ndarray
    m_minus: np.ndarray
    p: float
    r_plus: float
    r_minus: float


@dataclass(frozen=True)
class EnsembleAfterMeasurement:
    """Post-measurement ensemble: outcome probabilities and conditional spectra.

    Outcome 0 corresponds to the projector (I - X.sigma)/2 on qubit B.
    ``lambda0`` / ``lambda1`` are the eigenvalue pairs of the conditional
    states of qubit A; a degenerate outcome (probability below 1e-12) is
    flagged and contributes zero to the conditional entropy.
    """

    p0: float
    p1: float
    lambda0: tuple
    lambda1: tuple
    degenerate: tuple

    @property
    def conditional_entropy(self) -> float:
        total = 0.0
        for pk, lams, deg in ((self.p0, self.lambda0, self.degenerate[0]),
                              (self.p1, self.lambda1, self.degenerate[1])):
            if deg:
                continue
            for lam in lams:
                if lam > XLOG_CUTOFF:
                    total -= pk * lam * math.log2(lam)
        return total


class HessianSignature(Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    SADDLE = "saddle"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class StationaryPoint:
    """A refined stationary point of the conditional-entropy surface."""

    angles: MeasurementAngles
    value: float
    residuals: tuple | None
    hessian_signature: HessianSignature


@dataclass(frozen=True)
class DiscordResult:
    """Full output of a discord computation."""

    discord: float
    classical_correlations: float
    mutual_information: float
    min_conditional_entropy: float
    minimizer: MeasurementAngles
    stationary_points: tuple


@dataclass(frozen=True)
class SolverConfig:
    """Minimizer settings: coarse grid size and refinement control."""

    grid_theta: int = 24
    grid_phi: int = 48
    refine_tol: float = 1e-10
    max_refine_iters: int = 200

    def __post_init__(self):
        if self.grid_theta < 4 or self.grid_phi < 4:
            raise ValueError("grid_theta and grid_phi must be at least 4")
        if not (0.0 < self.refine_tol <= 1e-2):
            raise ValueError("refine_tol must lie in (0, 1e-2]")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be positive")

    @classmethod
    def from_file(cls, path) -> "SolverConfig":
        """Load settings from a JSON file using the same field names."""
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ValueError("solver config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown solver config fields: {sorted(unknown)}")
        return cls(**doc)


DEFAULT_CONFIG = SolverConfig()


def angles_to_hjk(angles: MeasurementAngles):
    """Map measurement angles to the constrained triple (h, j, k).

    Returns ``h = cos(theta) sin(theta) sin(phi)``, ``j = cos(theta)
    sin(theta) cos(phi)``, ``k = cos^2(theta)``; these satisfy
    ``k^2 + h^2 + j^2 = k`` identically.
    """
    ct, st = math.cos(angles.theta), math.sin(angles.theta)
    return (
        ct * st * math.sin(angles.phi),
        ct * st * math.cos(angles.phi),
        ct * ct,
    )


def _direction(theta: float, phi: float):
    """Unit measurement direction X = (2j, 2h, 2k - 1)."""
    s2, c2 = math.sin(2.0 * theta), math.cos(2.0 * theta)
    return s2 * math.cos(phi), s2 * math.sin(phi), c2


def measurement_geometry(nf: NormalForm, angles: MeasurementAngles) -> MeasurementGeometry:
    """Assemble the (X, m_+-, p, r_+-) geometry for a normal form at fixed angles."""
    x0, x1, x2 = _direction(angles.theta, angles.phi)
    x_dir = np.array([x0, x1, x2])
    cx = nf.c * x_dir
    m_plus = nf.a + cx
    m_minus = nf.a - cx
    return MeasurementGeometry(
        x_dir=x_dir,
        m_plus=m_plus,
        m_minus=m_minus,
        p=float(nf.b @ x_dir),
        r_plus=float(np.linalg.norm(m_plus)),
        r_minus=float(np.linalg.norm(m_minus)),
    )


def _entropy_from_prs(p: float, rp: float, rm: float) -> float:
    """Conditional entropy from the scalar invariants (p, r_plus, r_minus).

    Compact closed form of the outcome-averaged post-measurement entropy:

        S~ = -(1/4) [ f(1-p-r_-) + f(1-p+r_-) + f(1+p+r_+) + f(1+p-r_+)
                      - 4 - 2 f(1-p) - 2 f(1+p) ]

    with f(x) = x log2 x.  It agrees with the explicit ensemble
    projection to floating-point accuracy (see ensemble_after_measurement).
    """

    def f(x):
        return x * math.log2(x) if x > XLOG_CUTOFF else 0.0

    return -0.25 * (
        f(1.0 - p - rm)
        + f(1.0 - p + rm)
        + f(1.0 + p + rp)
        + f(1.0 + p - rp)
        - 4.0
        - 2.0 * f(1.0 - p)
        - 2.0 * f(1.0 + p)
    )


def _prs_scalar(a, b, c, theta, phi):
    """Scalar fast path for (p, r_plus, r_minus) at one angle pair."""
    s2 = math.sin(2.0 * theta)
    x0 = s2 * math.cos(phi)
    x1 = s2 * math.sin(phi)
    x2 = math.cos(2.0 * theta)
    p = b[0] * x0 + b[1] * x1 + b[2] * x2
    w0, w1, w2 = c[0] * x0, c[1] * x1, c[2] * x2
    rp = math.sqrt((a[0] + w0) ** 2 + (a[1] + w1) ** 2 + (a[2] + w2) ** 2)
    rm = math.sqrt((a[0] - w0) ** 2 + (a[1] - w1) ** 2 + (a[2] - w2) ** 2)
    return p, rp, rm


def conditional_entropy(nf: NormalForm, angles: MeasurementAngles) -> float:
    """Average post-measurement entropy of A for a projective measurement on B."""
    p, rp, rm = _prs_scalar(nf.a, nf.b, nf.c, angles.theta, angles.phi)
    return _entropy_from_prs(p, rp, rm)


def conditional_entropy_grid(nf: NormalForm, thetas, phis) -> np.ndarray:
    """Vectorized conditional entropy on the outer grid thetas x phis.

    Accepts arbitrary angle arrays (the expression is 2*pi-periodic and
    has period pi/2 in theta); used for dense-grid oracles and surface
    dumps.  Evaluation is chunked over theta rows to bound memory.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    a, b, c = nf.a, nf.b, nf.c
    out = np.empty((thetas.size, phis.size))
    cphi = np.cos(phis)[None, :]
    sphi = np.sin(phis)[None, :]
    max_rows = max(1, (1 << 19) // max(phis.size, 1))

    def f(x):
        r = np.zeros_like(x)
        mask = x > XLOG_CUTOFF
        r[mask] = x[mask] * np.log2(x[mask])
        return r

    for lo in range(0, thetas.size, max_rows):
        th = thetas[lo:lo + max_rows][:, None]
        s2 = np.sin(2.0 * th)
        x0 = s2 * cphi
        x1 = s2 * sphi
        x2 = np.broadcast_to(np.cos(2.0 * th), x0.shape)
        p = b[0] * x0 + b[1] * x1 + b[2] * x2
        w0, w1, w2 = c[0] * x0, c[1] * x1, c[2] * x2
        rp = np.sqrt((a[0] + w0) ** 2 + (a[1] + w1) ** 2 + (a[2] + w2) ** 2)
        rm = np.sqrt((a[0] - w0) ** 2 + (a[1] - w1) ** 2 + (a[2] - w2) ** 2)
        out[lo:lo + max_rows] = -0.25 * (
            f(1.0 - p - rm)
            + f(1.0 - p + rm)
            + f(1.0 + p + rp)
            + f(1.0 + p - rp)
            - 4.0
            - 2.0 * f(1.0 - p)
            - 2.0 * f(1.0 + p)
        )
    return out


def _grad_scalar(a, b, c, theta, phi):
    """Analytic (dS~/dtheta, dS~/dphi) at one angle pair."""
    s2 = math.sin(2.0 * theta)
    c2 = math.cos(2.0 * theta)
    cp = math.cos(phi)
    sp = math.sin(phi)
    x = (s2 * cp, s2 * sp, c2)
    xt = (2.0 * c2 * cp, 2.0 * c2 * sp, -2.0 * s2)
    xf = (-s2 * sp, s2 * cp, 0.0)

    p = b[0] * x[0] + b[1] * x[1] + b[2] * x[2]
    w = (c[0] * x[0], c[1] * x[1], c[2] * x[2])
    mp = (a[0] + w[0], a[1] + w[1], a[2] + w[2])
    mm = (a[0] - w[0], a[1] - w[1], a[2] - w[2])
    rp = math.sqrt(mp[0] ** 2 + mp[1] ** 2 + mp[2] ** 2)
    rm = math.sqrt(mm[0] ** 2 + mm[1] ** 2 + mm[2] ** 2)

    def safe_log(v):
        return math.log(v) if v > 1e-300 else math.log(1e-300)

    # Partials of S~ with respect to the invariants p, r_+, r_-.
    sp_term = -0.25 / LOG2 * (
        -safe_log(1.0 - p - rm)
        - safe_log(1.0 - p + rm)
        + safe_log(1.0 + p + rp)
        + safe_log(1.0 + p - rp)
        + 2.0 * safe_log(1.0 - p)
        - 2.0 * safe_log(1.0 + p)
    )
    srp = -0.25 / LOG2 * (safe_log(1.0 + p + rp) - safe_log(1.0 + p - rp))
    srm = -0.25 / LOG2 * (safe_log(1.0 - p + rm) - safe_log(1.0 - p - rm))

    out = []
    for xq in (xt, xf):
        wq = (c[0] * xq[0], c[1] * xq[1], c[2] * xq[2])
        pq = b[0] * xq[0] + b[1] * xq[1] + b[2] * xq[2]
        rpq = (mp[0] * wq[0] + mp[1] * wq[1] + mp[2] * wq[2]) / rp if rp > XLOG_CUTOFF else 0.0
        rmq = -(mm[0] * wq[0] + mm[1] * wq[1] + mm[2] * wq[2]) / rm if rm > XLOG_CUTOFF else 0.0
        out.append(sp_term * pq + srp * rpq + srm * rmq)
    return out[0], out[1]


def conditional_entropy_gradient(nf: NormalForm, theta: float, phi: float):
    """Analytic gradient (dS~/dtheta, dS~/dphi) of the conditional entropy.

    Evaluated anywhere on the torus (no domain restriction); matches
    central finite differences away from the poles and the r_+- = 0 rays.
    """
    return _grad_scalar(nf.a, nf.b, nf.c, theta, phi)


def ensemble_after_measurement(nf: NormalForm, angles: MeasurementAngles) -> EnsembleAfterMeasurement:
    """Explicitly project the reconstructed state and diagonalize each branch.

    This is an independent evaluation path (4x4 matrix projection and
    2x2 diagonalization, no (p, r) shortcut) used to cross-check
    conditional_entropy; the two agree to 1e-10 everywhere.
    """
    from .normal_form import reconstruct  # deferred: avoids cycle at import time

    rho = reconstruct(nf)
    x0, x1, x2 = _direction(angles.theta, angles.phi)
    ndots = np.array([[x2, x0 - 1j * x1], [x0 + 1j * x1, -x2]])
    eye = np.eye(2)
    probs = []
    lams = []
    degenerate = []
    for sign in (-1.0, +1.0):
        proj = 0.5 * (eye + sign * ndots)
        block = np.kron(eye, proj)
        sub = block @ rho @ block
        pk = float(np.trace(sub).real)
        degenerate.append(pk < DEGENERATE_PROB)
        if degenerate[-1]:
            probs.append(max(pk, 0.0))
            lams.append((0.5, 0.5))
            continue
        cond = partial_trace(sub / pk, keep="A")
        w = np.clip(np.linalg.eigvalsh(cond), 0.0, 1.0)
        probs.append(pk)
        lams.append((float(w[1]), float(w[0])))
    return EnsembleAfterMeasurement(
        p0=probs[0],
        p1=probs[1],
        lambda0=lams[0],
        lambda1=lams[1],
        degenerate=tuple(degenerate),
    )


def _lambdas_from_prs(p, rp, rm):
    """Conditional eigenvalue pairs (lambda0+-, lambda1+-) from (p, r_+-).

    Outcome 0 (projector along -X) has probability (1-p)/2 and spectrum
    (1 +- r_-/(1-p))/2; outcome 1 has probability (1+p)/2 and spectrum
    (1 +- r_+/(1+p))/2.
    """
    l0p = 0.5 * (1.0 + rm / (1.0 - p))
    l1p = 0.5 * (1.0 + rp / (1.0 + p))
    return (l0p, 1.0 - l0p), (l1p, 1.0 - l1p)


def stationarity_residuals(nf: NormalForm, angles: MeasurementAngles):
    """Residuals of the divided two-equation stationarity system.

    With the Jacobian determinants

        alpha = det d(p, r_+)/d(theta, phi)
        beta  = det d(p, r_-)/d(theta, phi)
        gamma = det d(r_+, r_-)/d(theta, phi)

    and Q = (lambda1+/lambda1-)^(alpha/beta), the system reads

        res1 = lambda0- * (1 + Q) - Q
        res2 = lambda1- - lambda0- * (lambda0+/lambda0-)^((alpha+beta+gamma)/(2 alpha))

    Both residuals vanish at interior stationary points of S~.

    Raises
    ------
    SingularDeterminantError
        If |alpha| or |beta| is below 1e-12, or a conditional eigenvalue
        sits at 0 or 1 (the exponentiated ratios are then undefined).
    """
    theta, phi = angles.theta, angles.phi
    a, b, c = nf.a, nf.b, nf.c
    s2, c2 = math.sin(2.0 * theta), math.cos(2.0 * theta)
    cp, sps = math.cos(phi), math.sin(phi)
    x = (s2 * cp, s2 * sps, c2)
    xt = (2.0 * c2 * cp, 2.0 * c2 * sps, -2.0 * s2)
    xf = (-s2 * sps, s2 * cp, 0.0)

    p = b[0] * x[0] + b[1] * x[1] + b[2] * x[2]
    w = (c[0] * x[0], c[1] * x[1], c[2] * x[2])
    mp = (a[0] + w[0], a[1] + w[1], a[2] + w[2])
    mm = (a[0] - w[0], a[1] - w[1], a[2] - w[2])
    rp = math.sqrt(mp[0] ** 2 + mp[1] ** 2 + mp[2] ** 2)
    rm = math.sqrt(mm[0] ** 2 + mm[1] ** 2 + mm[2] ** 2)

    derivs = {}
    for name, xq in (("t", xt), ("f", xf)):
        wq = (c[0] * xq[0], c[1] * xq[1], c[2] * xq[2])
        derivs["p" + name] = b[0] * xq[0] + b[1] * xq[1] + b[2] * xq[2]
        derivs["rp" + name] = (
            (mp[0] * wq[0] + mp[1] * wq[1] + mp[2] * wq[2]) / rp if rp > XLOG_CUTOFF else 0.0
        )
        derivs["rm" + name] = (
            -(mm[0] * wq[0] + mm[1] * wq[1] + mm[2] * wq[2]) / rm if rm > XLOG_CUTOFF else 0.0
        )

    alpha = derivs["pt"] * derivs["rpf"] - derivs["pf"] * derivs["rpt"]
    beta = derivs["pt"] * derivs["rmf"] - derivs["pf"] * derivs["rmt"]
    gamma = derivs["rpt"] * derivs["rmf"] - derivs["rpf"] * derivs["rmt"]

    if abs(alpha) < SINGULAR_DET or abs(beta) < SINGULAR_DET:
        raise SingularDeterminantError(
            f"divided stationarity system singular: alpha={alpha:.3e}, beta={beta:.3e}"
        )
    if 1.0 - abs(p) < DEGENERATE_PROB:
        raise SingularDeterminantError("degenerate outcome probability")
    (l0p, l0m), (l1p, l1m) = _lambdas_from_prs(p, rp, rm)
    if min(l0p, l0m, l1p, l1m) < XLOG_CUTOFF:
        raise SingularDeterminantError(
            "conditional eigenvalue at 0/1: exponentiated ratios undefined"
        )

    q = (l1p / l1m) ** (alpha / beta)
    res1 = l0m * (1.0 + q) - q
    res2 = l1m - l0m * (l0p / l0m) ** ((alpha + beta + gamma) / (2.0 * alpha))
    return float(res1), float(res2)


def _fd_hessian(a, b, c, theta, phi, step=1e-5):
    """Symmetrized central finite-difference Hessian of S~ from the analytic gradient."""
    gtp, gfp = _grad_scalar(a, b, c, theta + step, phi)
    gtm, gfm = _grad_scalar(a, b, c, theta - step, phi)
    gtp2, gfp2 = _grad_scalar(a, b, c, theta, phi + step)
    gtm2, gfm2 = _grad_scalar(a, b, c, theta, phi - step)
    htt = (gtp - gtm) / (2.0 * step)
    hff = (gfp2 - gfm2) / (2.0 * step)
    htf = 0.5 * ((gfp - gfm) + (gtp2 - gtm2)) / (2.0 * step)
    return np.array([[htt, htf], [htf, hff]])


def _classify(a, b, c, theta, phi) -> HessianSignature:
    h = _fd_hessian(a, b, c, theta, phi)
    w = np.linalg.eigvalsh(h)
    tol = 1e-8 + 1e-7 * np.max(np.abs(w))
    if w[0] > tol:
        return HessianSignature.MINIMUM
    if w[1] < -tol:
        return HessianSignature.MAXIMUM
    if w[0] < -tol < tol < w[1]:
        return HessianSignature.SADDLE
    return HessianSignature.DEGENERATE


def _newton_polish(a, b, c, theta, phi, tol, max_iters):
    """Newton iterations on the analytic gradient with backtracking."""
    val = _entropy_from_prs(*_prs_scalar(a, b, c, theta, phi))
    for _ in range(max_iters):
        g = np.array(_grad_scalar(a, b, c, theta, phi))
        if np.max(np.abs(g)) < 1e-13:
            break
        h = _fd_hessian(a, b, c, theta, phi)
        try:
            step = np.linalg.solve(h, -g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)) or np.linalg.norm(step) > 0.5:
            break
        accepted = False
        scale = 1.0
        for _ in range(6):
            nt, nf_ = theta + scale * step[0], phi + scale * step[1]
            nv = _entropy_from_prs(*_prs_scalar(a, b, c, nt, nf_))
            if nv <= val + 10.0 * abs(val) * 1e-16 + 1e-15:
                theta, phi, accepted = nt, nf_, True
                improved = val - nv
                val = nv
                break
            scale *= 0.5
        if not accepted or improved < tol * 1e-3:
            break
    return theta, phi, val


def _wrap_angles(theta, phi):
    """Reduce to the canonical torus [0, pi/2) x [0, 2pi); poles report phi = 0."""
    theta = theta % (0.5 * math.pi)
    phi = phi % (2.0 * math.pi)
    if phi >= 2.0 * math.pi:
        # Float modulo of a tiny negative rounds up to the period itself.
        phi = 0.0
    if theta < 1e-9 or theta > 0.5 * math.pi - 1e-9:
        return 0.0, 0.0
    return theta, phi


def minimize_conditional_entropy(nf: NormalForm, cfg: SolverConfig | None = None):
    """Globally minimize the conditional entropy over measurement angles.

    Coarse torus grid (cfg.grid_theta x cfg.grid_phi), local refinement of
    every distinct grid basin (quasi-Newton with the analytic gradient,
    then Newton polish), Hessian-signature classification of each refined
    point.  Returns ``(minimum, angles, stationary_points)`` where ties
    are broken toward the lexicographically smallest (theta, phi).
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b, c = nf.a, nf.b, nf.c
    thetas = np.linspace(0.0, 0.5 * math.pi, cfg.grid_theta, endpoint=False)
    phis = np.linspace(0.0, 2.0 * math.pi, cfg.grid_phi, endpoint=False)
    grid = conditional_entropy_grid(nf, thetas, phis)

    # Local minima on the torus: no strictly smaller value among 8 neighbors.
    is_min = np.ones_like(grid, dtype=bool)
    for dt in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dt == 0 and dp == 0:
                continue
            is_min &= grid <= np.roll(np.roll(grid, dt, axis=0), dp, axis=1)
    cand = np.argwhere(is_min)
    order = np.argsort(grid[is_min], kind="stable")
    cand = cand[order][:24]

    refined = []
    for it, ip in cand:
        x0 = np.array([thetas[it], phis[ip]])
        res = _scipy_minimize(
            lambda xv: (
                _entropy_from_prs(*_prs_scalar(a, b, c, xv[0], xv[1])),
                np.array(_grad_scalar(a, b, c, xv[0], xv[1])),
            ),
            x0,
            jac=True,
            method="L-BFGS-B",
            options={
                "maxiter": cfg.max_refine_iters,
                "ftol": 1e-16,
                "gtol": 1e-12,
            },
        )
        theta, phi, val = _newton_polish(
            a, b, c, float(res.x[0]), float(res.x[1]),
            cfg.refine_tol, cfg.max_refine_iters,
        )
        theta, phi = _wrap_angles(theta, phi)
        # + 0.0 turns a clamped -0.0 into +0.0 for clean reporting.
        refined.append((val + 0.0, theta, phi))

    # Merge refinements that landed in the same stationary point.
    refined.sort(key=lambda v: (round(v[0], 12), round(v[1], 9), round(v[2], 9)))
    distinct = []
    for val, theta, phi in refined:
        dup = False
        for _, t2, p2 in distinct:
            dt = min(abs(theta - t2), 0.5 * math.pi - abs(theta - t2))
            dp = min(abs(phi - p2), 2.0 * math.pi - abs(phi - p2))
            if math.hypot(dt, dp) < 1e-6:
                dup = True
                break
        if not dup:
            distinct.append((val, theta, phi))

    points = []
    for val, theta, phi in distinct:
        try:
            resid = stationarity_residuals(nf, MeasurementAngles(theta, phi))
        except SingularDeterminantError:
            resid = None
        points.append(
            StationaryPoint(
                angles=MeasurementAngles(theta, phi),
                value=val,
                residuals=resid,
                hessian_signature=_classify(a, b, c, theta, phi),
            )
        )

    best = min(points, key=lambda sp: (sp.value, sp.angles.theta, sp.angles.phi))
    return best.value, best.angles, tuple(points)


def quantum_discord(rho, cfg: SolverConfig | None = None, side: str = "B") -> DiscordResult:
    """Quantum discord of a two-qubit state under projective measurement of one side.

    Parameters
    ----------
    rho : array_like
        4x4 density matrix.
    cfg : SolverConfig, optional
        Minimizer settings.
    side : {"B", "A"}
        Measured subsystem.  Side A is computed by conjugating with the
        qubit-swap permutation first (discord is not symmetric).

    Returns
    -------
    DiscordResult
        discord D = S(B) - S(A,B) + min S~, classical correlations
        C = S(A) - min S~, mutual information I = D + C, the minimizing
        angles, and all classified stationary points.
    """
    rho = validate_density(rho)
    if side == "A":
        rho = SWAP @ rho @ SWAP
    elif side != "B":
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")

    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    s_ab = von_neumann_entropy(rho)

    nf, _ = to_normal_form(rho)
    min_val, angles, points = minimize_conditional_entropy(nf, cfg)

    discord = s_b - s_ab + min_val
    classical = s_a - min_val
    if -1e-9 <= discord < 0.0:
        discord = 0.0
    if -1e-9 <= classical < 0.0:
        classical = 0.0
    return DiscordResult(
        discord=discord,
        classical_correlations=classical,
        mutual_information=s_a + s_b - s_ab,
        min_conditional_entropy=min_val,
        minimizer=angles,
        stationary_points=points,
    )
