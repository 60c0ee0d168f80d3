"""Figure rendering for survey scatter plots, boundary curves, and entropy surfaces.

All renderers draw to files through the Agg backend (no display needed)
and sit beside the delimited outputs of the CLI report path.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .families import lower_boundary

__all__ = ["render_survey", "render_boundary", "render_surface"]


def _boundary_overlay(ax):
    d = np.linspace(0.0, 1.0, 600)
    ax.plot(d, d * d, "--", color="0.45", lw=1.0, label="hierarchy bound $D^2$")
    ax.plot(d, lower_boundary(d), "-", color="crimson", lw=1.2,
            label="family lower boundary")
    p = np.linspace(0.0, 0.5, 300)
    h2 = -np.where(p > 0, p * np.log2(np.clip(p, 1e-300, None)), 0.0) \
         - np.where(1 - p > 0, (1 - p) * np.log2(np.clip(1 - p, 1e-300, None)), 0.0)
    ax.plot(h2, 4 * p * (1 - p), "-", color="black", lw=1.0, label="pure states")


def render_survey(records, path, overlay: bool = True) -> None:
    """Scatter the surveyed (discord, 2 D_G) pairs with the analytic curves."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    d = [r.discord for r in records]
    y = [r.dg_normalized for r in records]
    ax.scatter(d, y, s=2.0, alpha=0.35, lw=0, color="tab:blue", label="sampled states")
    if overlay:
        _boundary_overlay(ax)
    ax.set_xlabel("quantum discord $D$ (bits)")
    ax.set_ylabel("normalized geometric discord $2D_G$")
    ax.set_xlim(0.0, 1.02)
    ax.set_ylim(0.0, 1.02)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_boundary(curve, path) -> None:
    """Plot per-bin extremes of 2 D_G against the analytic envelope."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    centers = [b.center for b in curve.bins if b.min_dg is not None]
    mins = [b.min_dg for b in curve.bins if b.min_dg is not None]
    maxs = [b.max_dg for b in curve.bins if b.max_dg is not None]
    ax.plot(centers, mins, "o-", ms=3, lw=1, color="tab:blue", label="bin minimum")
    ax.plot(centers, maxs, "s-", ms=3, lw=1, color="tab:orange", label="bin maximum")
    _boundary_overlay(ax)
    ax.set_xlabel("quantum discord $D$ (bits)")
    ax.set_ylabel("normalized geometric discord $2D_G$")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_surface(thetas, phis, values, path) -> None:
    """Heat map of the conditional-entropy surface over the angle grid."""
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    mesh = ax.pcolormesh(phis, thetas, values, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=r"conditional entropy $\tilde S$ (bits)")
    ax.set_xlabel(r"$\phi$ (rad)")
    ax.set_ylabel(r"$\theta$ (rad)")
    ax.set_yticks([0, math.pi / 4, math.pi / 2, 3 * math.pi / 4])
    ax.set_yticklabels(["0", r"$\pi/4$", r"$\pi/2$", r"$3\pi/4$"])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
