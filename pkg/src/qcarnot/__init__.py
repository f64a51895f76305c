"""Reversible heat-engine cycles for a single particle in a hard-walled 1-D box."""

from .boxmodel import (
    DEFAULT_PARAMS,
    NORMALIZATION_TOL,
    MixedState,
    WellParams,
    eigenenergy,
    eigenfunction_value,
    entropy,
    expectation_energy,
    wall_force,
)
from .cycle import (
    CarnotSpec,
    Cycle,
    CycleReport,
    build_carnot_cycle,
    evaluate_cycle,
    polyline_work,
    sample_cycle,
)
from .errors import (
    CycleGeometryError,
    DomainError,
    EngineError,
    IsothermRangeError,
    QuadratureError,
    SpecFormatError,
    StateError,
    TruncationError,
    VerificationError,
)
from .processes import (
    ProcessSample,
    Stroke,
    StrokeKind,
    adiabatic_stroke,
    isothermal_state_at,
    isothermal_stroke,
    sample_stroke,
    stroke_work,
    stroke_work_quadrature,
)
from .sudden import (
    TruncationReport,
    cosine_series,
    level_overlap_squares,
    overlap_coefficient,
    post_expansion_distribution,
    verify_energy_identity,
)
from .cli import SpecFile, parse_spec, render_spec

__version__ = "0.1.0"

__all__ = [
    "CarnotSpec",
    "Cycle",
    "CycleGeometryError",
    "CycleReport",
    "DEFAULT_PARAMS",
    "DomainError",
    "EngineError",
    "IsothermRangeError",
    "MixedState",
    "NORMALIZATION_TOL",
    "ProcessSample",
    "QuadratureError",
    "SpecFile",
    "SpecFormatError",
    "StateError",
    "Stroke",
    "StrokeKind",
    "TruncationError",
    "TruncationReport",
    "VerificationError",
    "WellParams",
    "adiabatic_stroke",
    "build_carnot_cycle",
    "cosine_series",
    "eigenenergy",
    "eigenfunction_value",
    "entropy",
    "evaluate_cycle",
    "expectation_energy",
    "isothermal_state_at",
    "isothermal_stroke",
    "level_overlap_squares",
    "overlap_coefficient",
    "parse_spec",
    "polyline_work",
    "post_expansion_distribution",
    "render_spec",
    "sample_cycle",
    "sample_stroke",
    "stroke_work",
    "stroke_work_quadrature",
    "verify_energy_identity",
    "wall_force",
]
