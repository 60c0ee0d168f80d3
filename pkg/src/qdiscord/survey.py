"""Monte Carlo surveys of the (discord, normalized geometric discord) plane.

Each surveyed state yields one SurveyRecord row; the CSV schema below is
stable and versioned (a header mismatch on read is an error).  Survey
output is deterministic for fixed (n, sampler, seed) regardless of the
worker count, because state streams are indexed, not partitioned.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .families import hierarchy_check
from .geometric import geometric_discord
from .sampling import SamplerSpec, sample_state, sampler_name
from .solver import SolverConfig, conditional_entropy_grid, quantum_discord

__all__ = [
    "SCHEMA_VERSION",
    "SURVEY_FIELDS",
    "SurveyRecord",
    "HierarchyViolationError",
    "compute_record",
    "run_survey",
    "write_survey_csv",
    "read_survey_csv",
    "BoundaryBin",
    "BoundaryCurve",
    "extract_boundary",
    "write_boundary_csv",
    "surface_grid",
    "write_surface_csv",
]

SCHEMA_VERSION = 1

SURVEY_FIELDS = (
    "id",
    "seed",
    "sampler_kind",
    "rank",
    "discord",
    "classical",
    "mutual_info",
    "dg_normalized",
    "theta_min",
    "phi_min",
    "n_stationary",
    "hierarchy_margin",
)

# Tolerance of the per-record hierarchy assertion 2 D_G >= D^2.
HIERARCHY_TOL = 1e-9


class HierarchyViolationError(RuntimeError):
    """A surveyed record violated 2 D_G >= D^2 beyond tolerance (solver bug)."""

    def __init__(self, record):
        self.record = record
        super().__init__(
            f"hierarchy violation at id={record.id}: discord={record.discord!r}, "
            f"dg_normalized={record.dg_normalized!r}, margin={record.hierarchy_margin!r}"
        )


@dataclass(frozen=True)
class SurveyRecord:
    """One surveyed state: identifiers, correlation measures, minimizer data."""

    id: int
    seed: int
    sampler_kind: str
    rank: int
    discord: float
    classical: float
    mutual_info: float
    dg_normalized: float
    theta_min: float
    phi_min: float
    n_stationary: int
    hierarchy_margin: float


def compute_record(spec: SamplerSpec, index: int,
                   cfg: SolverConfig | None = None, side: str = "B") -> SurveyRecord:
    """Sample the state at ``index`` and evaluate all survey measures on it."""
    rho = sample_state(spec, index)
    dres = quantum_discord(rho, cfg, side=side)
    geo = geometric_discord(rho, side=side)
    ok, margin = hierarchy_check(dres.discord, geo.dg_normalized, tol=HIERARCHY_TOL)
    record = SurveyRecord(
        id=index,
        seed=spec.seed,
        sampler_kind=sampler_name(spec),
        rank=spec.rank,
        discord=dres.discord,
        classical=dres.classical_correlations,
        mutual_info=dres.mutual_information,
        dg_normalized=geo.dg_normalized,
        theta_min=dres.minimizer.theta,
        phi_min=dres.minimizer.phi,
        n_stationary=len(dres.stationary_points),
        hierarchy_margin=margin,
    )
    if not ok:
        raise HierarchyViolationError(record)
    return record


def _compute_chunk(args):
    spec, indices, cfg, side = args
    return [compute_record(spec, i, cfg, side) for i in indices]


def run_survey(spec: SamplerSpec, n: int, cfg: SolverConfig | None = None,
               side: str = "B", workers: int = 1, progress=None):
    """Survey ``n`` states and return their records ordered by id.

    ``workers > 1`` fans chunks out to a process pool; ordering and
    content are identical to a single-worker run.  ``progress``, when
    given, is called with the cumulative number of finished states.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    indices = range(n)
    if workers == 1:
        records = []
        for i in indices:
            records.append(compute_record(spec, i, cfg, side))
            if progress is not None and (i + 1) % 500 == 0:
                progress(i + 1)
        if progress is not None:
            progress(n)
        return records

    chunk = max(1, math.ceil(n / (workers * 8)))
    tasks = [
        (spec, list(indices[lo:lo + chunk]), cfg, side)
        for lo in range(0, n, chunk)
    ]
    records = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_compute_chunk, tasks):
            records.extend(part)
            if progress is not None:
                progress(len(records))
    return records


def _fmt(x: float) -> str:
    return "%.9g" % x


def write_survey_csv(records, target) -> None:
    """Write records as CSV: exact header, 9 significant digits, '\\n' rows."""
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        fh.write(",".join(SURVEY_FIELDS) + "\n")
        for r in records:
            fh.write(
                ",".join(
                    (
                        str(r.id),
                        str(r.seed),
                        r.sampler_kind,
                        str(r.rank),
                        _fmt(r.discord),
                        _fmt(r.classical),
                        _fmt(r.mutual_info),
                        _fmt(r.dg_normalized),
                        _fmt(r.theta_min),
                        _fmt(r.phi_min),
                        str(r.n_stationary),
                        _fmt(r.hierarchy_margin),
                    )
                )
                + "\n"
            )
    finally:
        if own:
            fh.close()


def read_survey_csv(source):
    """Read survey records back; the header must match the schema exactly."""
    own = not hasattr(source, "read")
    fh = open(source, "r", encoding="utf-8", newline="") if own else source
    try:
        header = fh.readline().rstrip("\n")
        if header.split(",") != list(SURVEY_FIELDS):
            raise ValueError(
                f"survey CSV header mismatch (schema v{SCHEMA_VERSION}): got {header!r}"
            )
        records = []
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            v = line.split(",")
            if len(v) != len(SURVEY_FIELDS):
                raise ValueError(f"malformed survey CSV row: {line!r}")
            records.append(
                SurveyRecord(
                    id=int(v[0]),
                    seed=int(v[1]),
                    sampler_kind=v[2],
                    rank=int(v[3]),
                    discord=float(v[4]),
                    classical=float(v[5]),
                    mutual_info=float(v[6]),
                    dg_normalized=float(v[7]),
                    theta_min=float(v[8]),
                    phi_min=float(v[9]),
                    n_stationary=int(v[10]),
                    hierarchy_margin=float(v[11]),
                )
            )
        return records
    finally:
        if own:
            fh.close()


@dataclass(frozen=True)
class BoundaryBin:
    """Extremes of 2 D_G in one discord bin; None fields mark an empty bin."""

    center: float
    min_dg: float | None
    max_dg: float | None
    id_min: int | None
    id_max: int | None


@dataclass(frozen=True)
class BoundaryCurve:
    bin_width: float
    bins: tuple


def extract_boundary(records, bin_width: float = 0.01) -> BoundaryCurve:
    """Per-bin min/max of 2 D_G over discord bins covering [0, 1].

    Records are bucketed by discord; each populated bin reports its
    extreme dg_normalized values with witness state ids, empty bins are
    kept with null fields so the curve has a fixed, regular layout.
    """
    if not (0.0 < bin_width <= 0.5):
        raise ValueError("bin_width must lie in (0, 0.5]")
    n_bins = int(math.ceil(1.0 / bin_width))
    lo = [None] * n_bins
    hi = [None] * n_bins
    for r in records:
        idx = min(int(r.discord / bin_width), n_bins - 1)
        if lo[idx] is None or r.dg_normalized < lo[idx][0]:
            lo[idx] = (r.dg_normalized, r.id)
        if hi[idx] is None or r.dg_normalized > hi[idx][0]:
            hi[idx] = (r.dg_normalized, r.id)
    bins = []
    for i in range(n_bins):
        center = (i + 0.5) * bin_width
        if lo[i] is None:
            bins.append(BoundaryBin(center, None, None, None, None))
        else:
            bins.append(BoundaryBin(center, lo[i][0], hi[i][0], lo[i][1], hi[i][1]))
    return BoundaryCurve(bin_width=bin_width, bins=tuple(bins))


def write_boundary_csv(curve: BoundaryCurve, target) -> None:
    """Write a boundary curve as CSV; empty bins carry explicit NA markers."""
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        fh.write("bin_center,min_dg,max_dg,state_id_min,state_id_max\n")
        for b in curve.bins:
            if b.min_dg is None:
                fh.write(f"{_fmt(b.center)},NA,NA,NA,NA\n")
            else:
                fh.write(
                    f"{_fmt(b.center)},{_fmt(b.min_dg)},{_fmt(b.max_dg)},"
                    f"{b.id_min},{b.id_max}\n"
                )
    finally:
        if own:
            fh.close()


def surface_grid(nf, n_theta: int = 90, n_phi: int = 180):
    """Conditional-entropy surface dump over theta in [0, pi), phi in [0, 2 pi).

    The doubled theta range exhibits the half-period symmetry
    S~(theta + pi/2, phi) = S~(theta, phi).
    """
    thetas = np.linspace(0.0, math.pi, n_theta, endpoint=False)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    return thetas, phis, conditional_entropy_grid(nf, thetas, phis)


def write_surface_csv(thetas, phis, values, target) -> None:
    """Write a surface dump as long-format CSV rows theta,phi,cond_entropy."""
    own = not hasattr(target, "write")
    fh = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        fh.write("theta,phi,cond_entropy\n")
        for i, th in enumerate(thetas):
            for j, ph in enumerate(phis):
                fh.write(f"{_fmt(th)},{_fmt(ph)},{_fmt(values[i, j])}\n")
    finally:
        if own:
            fh.close()
