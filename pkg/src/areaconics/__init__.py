"""Conics as loci of rectangle-and-square area applications on a segment.

The package constructs, with straightedge-and-compass primitives, a
rectangle of prescribed area applied to a base segment together with a
companion square of equal area, and sweeps the rectangle height to
trace the parabola, ellipse, or hyperbola through the intersection
point of the two figures. Constructions are recorded as replayable,
proposition-cited traces; loci can be verified against the closed-form
equations, cross-checked with a least-squares conic fit, and rendered
as deterministic SVG diagrams.
"""

from .constructions import (
    ApplicationKind,
    ApplicationResult,
    ApplicationSpec,
    ConstructionError,
    ConstructionStep,
    ConstructionTrace,
    DeficiencyExceedsBaseError,
    GeometricFailureError,
    InfeasibleAreaError,
    MalformedTraceError,
    StepOp,
    apply_deficient,
    apply_exact,
    apply_excess,
    replay_trace,
    solve_height_for_area,
)
from .figures import (
    Arc,
    DASH_PATTERN,
    Dot,
    EmptySceneError,
    FIGURE_PARAMS,
    FigureError,
    Label,
    SVG_SCALE,
    Scene,
    Stroke,
    StyledPrimitive,
    standard_figure,
    render_svg,
    scene_from_application,
    scene_from_locus,
)
from .kernel import (
    Circle,
    DEFAULT_TOLERANCE,
    DegenerateRayError,
    GeometryError,
    Line,
    OffLineError,
    Point,
    Segment,
    Tolerance,
    distance,
    erect_perpendicular,
    extend_along_ray,
    intersect_circle_line,
    line_through,
    midpoint,
)
from .locus import (
    Branch,
    ConicKind,
    ConicSpec,
    DegenerateFitError,
    LocusError,
    LocusPoint,
    SampleRange,
    VerificationReport,
    conic_params,
    fit_conic_oracle,
    max_applicable_area,
    mirror,
    normalize_conic_coefficients,
    read_locus_csv,
    sample_locus,
    verify_residuals,
    write_locus_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ApplicationKind",
    "ApplicationResult",
    "ApplicationSpec",
    "Arc",
    "Branch",
    "Circle",
    "ConicKind",
    "ConicSpec",
    "ConstructionError",
    "ConstructionStep",
    "ConstructionTrace",
    "DASH_PATTERN",
    "DEFAULT_TOLERANCE",
    "DeficiencyExceedsBaseError",
    "DegenerateFitError",
    "DegenerateRayError",
    "Dot",
    "EmptySceneError",
    "FIGURE_PARAMS",
    "FigureError",
    "GeometricFailureError",
    "GeometryError",
    "InfeasibleAreaError",
    "Label",
    "Line",
    "LocusError",
    "LocusPoint",
    "MalformedTraceError",
    "OffLineError",
    "Point",
    "SVG_SCALE",
    "SampleRange",
    "Scene",
    "Segment",
    "StepOp",
    "Stroke",
    "StyledPrimitive",
    "Tolerance",
    "VerificationReport",
    "apply_deficient",
    "apply_exact",
    "apply_excess",
    "conic_params",
    "distance",
    "erect_perpendicular",
    "extend_along_ray",
    "fit_conic_oracle",
    "intersect_circle_line",
    "line_through",
    "max_applicable_area",
    "midpoint",
    "mirror",
    "normalize_conic_coefficients",
    "standard_figure",
    "read_locus_csv",
    "render_svg",
    "replay_trace",
    "sample_locus",
    "scene_from_application",
    "scene_from_locus",
    "solve_height_for_area",
    "verify_residuals",
    "write_locus_csv",
]
