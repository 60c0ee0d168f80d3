"""Quantum and geometric discord for two-qubit states.

Library layout:

* :mod:`qdiscord.core` - validated density matrices, Bloch algebra, entropies;
* :mod:`qdiscord.normal_form` - reduction to the nine-parameter normal form;
* :mod:`qdiscord.solver` - conditional-entropy surface and discord minimization;
* :mod:`qdiscord.geometric` - closed-form geometric discord and its MC oracle;
* :mod:`qdiscord.families` - analytic extremal families and the hierarchy bound;
* :mod:`qdiscord.sampling` - reproducible random-state generation;
* :mod:`qdiscord.survey` - Monte Carlo surveys, CSV schema, boundary extraction;
* :mod:`qdiscord.plotting` - figure rendering for the CLI report path;
* :mod:`qdiscord.cli` - the ``qdiscord`` command.
"""

from .core import (
    BlochMatrix,
    NotHermitianError,
    NotPositiveError,
    StateValidationError,
    TraceNotOneError,
    bloch_compose,
    bloch_decompose,
    dump_state_json,
    load_state_json,
    mutual_information,
    partial_trace,
    validate_density,
    von_neumann_entropy,
)
from .families import (
    Family,
    FamilyPoint,
    NoRootError,
    ParameterOutOfRangeError,
    alpha_state,
    branch2_state,
    branch3_state,
    hierarchy_check,
    lower_boundary,
    pure_state,
)
from .geometric import (
    GeometricResult,
    geometric_discord,
    geometric_discord_nf,
    min_distance_bruteforce,
)
from .normal_form import LocalFrame, NormalForm, reconstruct, to_normal_form
from .sampling import SamplerKind, SamplerSpec, parse_sampler, sample, sample_state
from .solver import (
    DiscordResult,
    EnsembleAfterMeasurement,
    HessianSignature,
    MeasurementAngles,
    MeasurementGeometry,
    SingularDeterminantError,
    SolverConfig,
    StationaryPoint,
    angles_to_hjk,
    conditional_entropy,
    conditional_entropy_gradient,
    conditional_entropy_grid,
    ensemble_after_measurement,
    measurement_geometry,
    minimize_conditional_entropy,
    quantum_discord,
    stationarity_residuals,
)
from .survey import (
    BoundaryCurve,
    HierarchyViolationError,
    SurveyRecord,
    compute_record,
    extract_boundary,
    run_survey,
    write_survey_csv,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # core
    "BlochMatrix", "StateValidationError", "NotHermitianError", "TraceNotOneError",
    "NotPositiveError", "validate_density", "bloch_decompose", "bloch_compose",
    "partial_trace", "von_neumann_entropy", "mutual_information",
    "load_state_json", "dump_state_json",
    # normal form
    "NormalForm", "LocalFrame", "to_normal_form", "reconstruct",
    # solver
    "MeasurementAngles", "MeasurementGeometry", "EnsembleAfterMeasurement",
    "StationaryPoint", "HessianSignature", "DiscordResult", "SolverConfig",
    "SingularDeterminantError", "angles_to_hjk", "measurement_geometry",
    "conditional_entropy", "conditional_entropy_grid", "conditional_entropy_gradient",
    "ensemble_after_measurement", "stationarity_residuals",
    "minimize_conditional_entropy", "quantum_discord",
    # geometric
    "GeometricResult", "geometric_discord", "geometric_discord_nf",
    "min_distance_bruteforce",
    # families
    "Family", "FamilyPoint", "ParameterOutOfRangeError", "NoRootError",
    "alpha_state", "branch2_state", "branch3_state", "pure_state",
    "hierarchy_check", "lower_boundary",
    # sampling / survey
    "SamplerKind", "SamplerSpec", "parse_sampler", "sample", "sample_state",
    "SurveyRecord", "BoundaryCurve", "HierarchyViolationError",
    "compute_record", "run_survey", "write_survey_csv", "extract_boundary",
]
