"""Analytic extremal families of the (discord, normalized-geometric-discord) plane.

Four one-parameter families trace the boundary of the attainable region:

* branch I ("alpha" states): maximally discordant states at fixed
  geometric discord for D <= 1/3, saturating 2 D_G = D^2;
* branch II: a two-parameter X-state subclass declared along the short
  fold just past the branch-I endpoint (see branch2_state for the
  numeric status of its defining relation);
* branch III: asymmetric X-states of rank 3 realizing the minimal
  geometric discord at fixed discord above the branch-I range;
* pure states: the top-right boundary, D = H2(p), 2 D_G = 4 p (1 - p).

The module also provides the hierarchy check 2 D_G >= D^2 and the
piecewise lower-boundary envelope used to validate survey output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import validate_density

__all__ = [
    "Family",
    "FamilyPoint",
    "ParameterOutOfRangeError",
    "NoRootError",
    "alpha_state",
    "branch2_state",
    "branch3_state",
    "pure_state",
    "hierarchy_check",
    "lower_boundary",
]

# Arguments of atanh are clamped into (-1 + CLAMP, 1 - CLAMP); arguments of
# log are clamped below at CLAMP.
CLAMP = 1e-15

# Bisection tolerance on the family parameter.
BISECT_TOL = 1e-12


class ParameterOutOfRangeError(ValueError):
    """Family parameter outside its documented domain."""


class NoRootError(ArithmeticError):
    """A family's defining relation has no root inside its declared bracket."""


class Family(Enum):
    BRANCH_I = "branch-i"
    BRANCH_II = "branch-ii"
    BRANCH_III = "branch-iii"
    PURE = "pure"


@dataclass(frozen=True)
class FamilyPoint:
    """One member of an extremal family.

    ``analytic_discord`` is the family's closed-form discord where one is
    tabulated (None when only the numeric solver can supply it);
    ``analytic_dg_normalized`` is the family's closed-form normalized
    geometric discord.
    """

    family: Family
    parameter: float
    state: np.ndarray
    analytic_discord: float | None
    analytic_dg_normalized: float


def _atanh(x: float) -> float:
    return math.atanh(min(max(x, -1.0 + CLAMP), 1.0 - CLAMP))


def _log(x: float) -> float:
    return math.log(max(x, CLAMP))


def _h2(p: float) -> float:
    """Binary entropy in bits."""
    total = 0.0
    for v in (p, 1.0 - p):
        if v > CLAMP:
            total -= v * math.log2(v)
    return total


def _bisect(func, lo: float, hi: float, what: str):
    """Plain bisection with endpoint-root acceptance.

    Returns a root of ``func`` in [lo, hi] to parameter tolerance 1e-12.
    Raises NoRootError when the bracket shows no sign change (endpoint
    values reported, never clamped into a fake root).
    """
    flo, fhi = func(lo), func(hi)
    if abs(flo) <= 1e-12:
        return lo
    if abs(fhi) <= 1e-12:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise NoRootError(
            f"{what}: no sign change over [{lo:.12g}, {hi:.12g}] "
            f"(f(lo)={flo:.6g}, f(hi)={fhi:.6g})"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = func(mid)
        if fmid == 0.0 or (hi - lo) <= BISECT_TOL:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def alpha_state(alpha: float) -> FamilyPoint:
    """Branch-I state: an even mixture skeleton with tunable Bell coherence.

    Valid for 0 <= alpha <= 1/3; satisfies D = alpha and
    2 D_G = alpha^2 exactly (hierarchy saturation).
    """
    if not (-1e-12 <= alpha <= 1.0 / 3.0 + 1e-12):
        raise ParameterOutOfRangeError(f"alpha must lie in [0, 1/3], got {alpha!r}")
    alpha = min(max(alpha, 0.0), 1.0 / 3.0)
    h = 0.5 * alpha
    m = 0.5 * (1.0 - alpha)
    state = np.array(
        [
            [h, 0.0, 0.0, h],
            [0.0, m, 0.0, 0.0],
            [0.0, 0.0, m, 0.0],
            [h, 0.0, 0.0, h],
        ]
    )
    return FamilyPoint(
        family=Family.BRANCH_I,
        parameter=alpha,
        state=validate_density(state),
        analytic_discord=float(alpha),
        analytic_dg_normalized=float(alpha * alpha),
    )


def _branch2_relation(r: float, a: float) -> float:
    s = math.sqrt(a * a + r * r)
    return (
        2.0 * r * _atanh(s) / s if s > CLAMP else 0.0
    ) + _log(1.0 - a - r) - _log(1.0 - a + r) + 2.0 * _atanh(r)


def branch2_state(a: float) -> FamilyPoint:
    """Branch-II candidate state for 1/3 <= a <= 5/14.

    The declared construction fixes the coherence r as the root of a
    transcendental relation inside the bracket
    [sqrt(4a - 3a^2 - 1), (1 - a)/3].  Numerical evaluation shows the
    relation is strictly positive on that bracket for every interior
    parameter, so NoRootError is raised there (reported, never clamped);
    the single attainable root is the degenerate endpoint r = 0 at
    a = 1/3, whose state is diagonal.  ``analytic_dg_normalized`` carries
    the family's tabulated value a^2; no closed-form discord is tabulated.
    """
    if not (1.0 / 3.0 - 1e-12 <= a <= 5.0 / 14.0 + 1e-12):
        raise ParameterOutOfRangeError(f"a must lie in [1/3, 5/14], got {a!r}")
    a = min(max(a, 1.0 / 3.0), 5.0 / 14.0)
    lo = math.sqrt(max(4.0 * a - 3.0 * a * a - 1.0, 0.0))
    hi = (1.0 - a) / 3.0
    r = _bisect(lambda rr: _branch2_relation(rr, a), lo, hi, "branch-ii relation")
    half = 0.5 * (1.0 - a)
    coh = 0.5 * r
    state = np.array(
        [
            [half, 0.0, 0.0, coh],
            [0.0, a, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [coh, 0.0, 0.0, half],
        ]
    )
    return FamilyPoint(
        family=Family.BRANCH_II,
        parameter=float(a),
        state=validate_density(state),
        analytic_discord=None,
        analytic_dg_normalized=float(a * a),
    )


def _branch3_relation(c: float, g: float) -> float:
    q1 = 8.0 * (c - 1.0) * c - 2.0 * g + 3.0
    q2 = 8.0 * (c - c * c) - 2.0 * g + 3.0
    s1 = math.sqrt(max(q1, 0.0))
    s2 = math.sqrt(max(q2, 0.0))
    return (
        8.0 * (1.0 - 2.0 * c) * c * c * _atanh(s1)
        - 4.0 * c * c * s1 * _atanh(1.0 - 2.0 * c)
        + 2.0 * s2 * (2.0 * c * c + g - 1.0) * _atanh((3.0 * c - 2.0 * c * c + g - 1.0) / c)
    )


def _branch3_discord(a: float, c: float) -> float:
    """Closed-form discord of the branch-III state with parameters (a, c)."""
    u = 4.0 * c * (a + c - 1.0)
    s = math.sqrt(max(u + 1.0, 0.0))
    return (1.0 / math.log(4.0)) * (
        -_log(-u)
        - 2.0 * s * _atanh(s)
        - 2.0 * _log(1.0 - a)
        + 4.0 * a * _atanh(1.0 - 2.0 * a)
        + 2.0 * _log(2.0 - 2.0 * c)
        - 4.0 * c * _atanh(1.0 - 2.0 * c)
    )


def _branch3_matrix(a: float, c: float) -> np.ndarray:
    w = math.sqrt(max(a - a * a - a * c, 0.0))
    return np.array(
        [
            [a, 0.0, 0.0, w],
            [0.0, c, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [w, 0.0, 0.0, 1.0 - a - c],
        ]
    )


def branch3_state(g: float) -> FamilyPoint:
    """Branch-III state: rank-3 asymmetric X-state with 2 D_G = g.

    The diagonal weight c is the bisection root of the family's
    transcendental relation inside [(1 - sqrt(g))/2, 1/2 - H(g)] where
    H(g) = sqrt(2g - 1)/2 for g > 1/2 and 0 otherwise; the second
    diagonal weight follows as a = (1 - 2c + 2c^2 - g)/(2c).  The two
    parameter endpoints are degenerate and handled exactly: g = 0 gives
    the product state (c = 1/2, a = 1/2) and g = 1 the maximally
    entangled limit (c -> 0, a -> 1/2).
    """
    if not (-1e-12 <= g <= 1.0 + 1e-12):
        raise ParameterOutOfRangeError(f"g must lie in [0, 1], got {g!r}")
    g = min(max(g, 0.0), 1.0)
    if g < 1e-12:
        return FamilyPoint(
            family=Family.BRANCH_III,
            parameter=0.0,
            state=validate_density(_branch3_matrix(0.5, 0.5)),
            analytic_discord=0.0,
            analytic_dg_normalized=0.0,
        )
    # Within 1e-8 of g = 1 the bracket width collapses like (1 - g)/4 and
    # the recovered weight a loses several digits to cancellation, so the
    # exact maximally entangled endpoint is substituted; along the family
    # both D and 2 D_G then differ from the true point by under 5e-8.
    if g > 1.0 - 1e-8:
        bell = np.zeros((4, 4))
        bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
        return FamilyPoint(
            family=Family.BRANCH_III,
            parameter=1.0,
            state=validate_density(bell),
            analytic_discord=1.0,
            analytic_dg_normalized=1.0,
        )
    lo = 0.5 * (1.0 - math.sqrt(g))
    hi = 0.5 if g <= 0.5 else 0.5 - 0.5 * math.sqrt(2.0 * g - 1.0)
    # At g = 1/2 the c = 1/2 end of the bracket becomes a spurious zero of
    # the relation (its value there carries the factor (g - 1/2) atanh(2g))
    # describing the degenerate a = 0 product limit rather than the family
    # root, so step inside before bisecting.  Near that g the true root sits
    # at 85% of the bracket width, far inside the shrunken interval; for
    # smaller g the endpoint value scales like g itself and stays clear of
    # the root-acceptance threshold, so no inset is needed or applied.
    if g <= 0.5 and 0.5 - g <= 1e-9:
        hi -= 1e-3 * (hi - lo)
    c = _bisect(lambda cc: _branch3_relation(cc, g), lo, hi, "branch-iii relation")
    a = (1.0 - 2.0 * c + 2.0 * c * c - g) / (2.0 * c)
    return FamilyPoint(
        family=Family.BRANCH_III,
        parameter=float(g),
        state=validate_density(_branch3_matrix(a, c)),
        analytic_discord=_branch3_discord(a, c),
        analytic_dg_normalized=float(g),
    )


def pure_state(p: float) -> FamilyPoint:
    """Pure Schmidt state sqrt(p)|00> + sqrt(1-p)|11>.

    Discord equals the marginal entropy H2(p); the normalized geometric
    discord equals the marginal linear entropy 4 p (1 - p).
    """
    if not (-1e-12 <= p <= 1.0 + 1e-12):
        raise ParameterOutOfRangeError(f"p must lie in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    vec = np.array([math.sqrt(p), 0.0, 0.0, math.sqrt(1.0 - p)])
    return FamilyPoint(
        family=Family.PURE,
        parameter=float(p),
        state=validate_density(np.outer(vec, vec)),
        analytic_discord=_h2(p),
        analytic_dg_normalized=float(4.0 * p * (1.0 - p)),
    )


def hierarchy_check(discord: float, dg_normalized: float, tol: float = 1e-9):
    """Check the hierarchy bound 2 D_G >= D^2.

    Returns ``(ok, margin)`` with ``margin = dg_normalized - discord**2``;
    ``ok`` is True when the margin is above ``-tol``.
    """
    margin = float(dg_normalized) - float(discord) ** 2
    return margin >= -tol, margin


_CURVES = {}


def _boundary_tables():
    """Tabulated (discord, 2 D_G) boundary curves above the branch-I range."""
    if "tables" not in _CURVES:
        gs = np.concatenate(
            [np.linspace(1e-6, 0.1, 120), np.linspace(0.1, 1.0 - 1e-6, 400)]
        )
        d3, y3 = [], []
        for g in gs:
            fp = branch3_state(float(g))
            d3.append(fp.analytic_discord)
            y3.append(fp.analytic_dg_normalized)
        d3 = np.asarray(d3)
        y3 = np.asarray(y3)
        keep = np.argsort(d3)
        ps = np.linspace(0.0, 0.5, 400)
        dp = np.array([_h2(p) for p in ps])
        yp = 4.0 * ps * (1.0 - ps)
        _CURVES["tables"] = (d3[keep], y3[keep], dp, yp)
    return _CURVES["tables"]


def lower_boundary(d):
    """Lower envelope of attainable 2 D_G at fixed discord.

    Piecewise union of the analytic families: the hierarchy parabola
    D^2 up to D = 1/3 (where branch I saturates it), then the pointwise
    minimum of the branch-III and pure-state curves.  The short branch-II
    fold lies at D <= 1/3 strictly above the parabola, so it never
    contributes to the envelope.  Because the hierarchy bound holds for
    every state, the tabulated segment is floored at D^2 as well, which
    removes interpolation dips just past the junction.

    Accepts a scalar or array of discord values in [0, 1].
    """
    d = np.asarray(d, dtype=float)
    d3, y3, dp, yp = _boundary_tables()
    above = np.minimum(
        np.interp(d, d3, y3, left=y3[0], right=y3[-1]),
        np.interp(d, dp, yp, left=yp[0], right=yp[-1]),
    )
    out = np.where(d <= 1.0 / 3.0, d * d, np.maximum(above, d * d))
    return float(out) if out.ndim == 0 else out
