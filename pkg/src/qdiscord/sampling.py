"""Reproducible random two-qubit state generation for surveys and tests.

Determinism contract: the state at index ``i`` depends only on the spec's
seed and ``i`` (each state draws from its own child generator spawned as
``SeedSequence(seed, spawn_key=(i,))``).  Survey output is therefore
identical however the index range is partitioned across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import validate_density

__all__ = ["SamplerKind", "SamplerSpec", "parse_sampler", "sampler_name", "sample", "sample_state"]


class SamplerKind(Enum):
    PURE_HAAR = "pure"
    MIXED_GINIBRE = "ginibre"
    X_STATE_UNIFORM = "xstate"


@dataclass(frozen=True)
class SamplerSpec:
    """Sampler identity: kind, Ginibre rank (0 when not applicable), and seed."""

    kind: SamplerKind
    rank: int
    seed: int

    def __post_init__(self):
        if self.kind is SamplerKind.MIXED_GINIBRE:
            if not 1 <= self.rank <= 4:
                raise ValueError(f"Ginibre rank must be 1..4, got {self.rank}")
        elif self.kind is SamplerKind.PURE_HAAR:
            if self.rank != 1:
                raise ValueError("pure sampler has fixed rank 1")
        elif self.rank != 0:
            raise ValueError("x-state sampler takes rank 0 (not applicable)")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def parse_sampler(name: str, seed: int) -> SamplerSpec:
    """Build a SamplerSpec from a CLI-style name: pure, ginibre1..4, xstate."""
    if name == "pure":
        return SamplerSpec(SamplerKind.PURE_HAAR, 1, seed)
    if name == "xstate":
        return SamplerSpec(SamplerKind.X_STATE_UNIFORM, 0, seed)
    if name.startswith("ginibre") and name[len("ginibre"):] in {"1", "2", "3", "4"}:
        return SamplerSpec(SamplerKind.MIXED_GINIBRE, int(name[-1]), seed)
    raise ValueError(f"unknown sampler {name!r} (expected pure, ginibre1..4, or xstate)")


def sampler_name(spec: SamplerSpec) -> str:
    if spec.kind is SamplerKind.PURE_HAAR:
        return "pure"
    if spec.kind is SamplerKind.MIXED_GINIBRE:
        return f"ginibre{spec.rank}"
    return "xstate"


def _pure_haar(rng) -> np.ndarray:
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    z /= np.linalg.norm(z)
    return np.outer(z, z.conj())


def _ginibre(rng, rank: int) -> np.ndarray:
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _xstate(rng) -> np.ndarray:
    """Uniform X-state: simplex diagonal, coherences uniform in their valid boxes."""
    p = rng.dirichlet(np.ones(4))
    m03 = rng.uniform(0.0, np.sqrt(p[0] * p[3]))
    m12 = rng.uniform(0.0, np.sqrt(p[1] * p[2]))
    ph03 = rng.uniform(0.0, 2.0 * np.pi)
    ph12 = rng.uniform(0.0, 2.0 * np.pi)
    rho = np.diag(p).astype(complex)
    rho[0, 3] = m03 * np.exp(1j * ph03)
    rho[3, 0] = rho[0, 3].conjugate()
    rho[1, 2] = m12 * np.exp(1j * ph12)
    rho[2, 1] = rho[1, 2].conjugate()
    return rho


def sample_state(spec: SamplerSpec, index: int) -> np.ndarray:
    """The validated state at a given stream index (worker-partition independent)."""
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed, spawn_key=(index,)))
    if spec.kind is SamplerKind.PURE_HAAR:
        rho = _pure_haar(rng)
    elif spec.kind is SamplerKind.MIXED_GINIBRE:
        rho = _ginibre(rng, spec.rank)
    else:
        # The coherence boxes already enforce positivity of both 2x2 blocks,
        # so validation cannot reject; the loop keeps the contract explicit.
        while True:
            try:
                return validate_density(_xstate(rng))
            except ValueError:
                continue
    return validate_density(rho)


def sample(spec: SamplerSpec, n: int):
    """Yield ``n`` validated density matrices for the given spec."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for i in range(n):
        yield sample_state(spec, i)
