"""Conic loci swept out by the area applications.

As the rectangle height y varies with the base segment fixed, the
rectangle/square intersection point J traces a conic: a parabola for
the exact application (x**2 = L*y), an ellipse for the deficient one
(x**2 = L*y - lam*y**2), and one hyperbola branch for the excessive one
(x**2 = L*y + lam*y**2), completed by mirror images across the height
axis and, for the hyperbola, by reflection across the conjugate axis
y = -L/(2*lam).

``sample_locus`` drives the constructions, never the closed forms; the
closed forms live in ``conic_params`` and ``verify_residuals``, so
construction-versus-equation agreement is a checked property rather
than an assumption. ``fit_conic_oracle`` is an independent least-squares
cross check on sampled points.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path as FilePath
from typing import Any, Iterable, Sequence

import numpy as np

from .constructions import apply_deficient, apply_exact, apply_excess
from .kernel import Point

__all__ = [
    "Branch",
    "ConicKind",
    "ConicSpec",
    "DegenerateFitError",
    "LocusError",
    "LocusPoint",
    "SampleRange",
    "VerificationReport",
    "conic_params",
    "fit_conic_oracle",
    "max_applicable_area",
    "mirror",
    "normalize_conic_coefficients",
    "read_locus_csv",
    "sample_locus",
    "verify_residuals",
    "write_locus_csv",
]


class LocusError(ValueError):
    """Invalid locus parameters or data."""


class DegenerateFitError(LocusError):
    """The sampled points do not determine a unique conic."""


class ConicKind(Enum):
    PARABOLA = "parabola"
    ELLIPSE = "ellipse"
    HYPERBOLA = "hyperbola"


class Branch(Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class LocusPoint:
    """One traced point: x is the square side, y the rectangle height.

    ``branch`` distinguishes the hyperbola's two branches; everything
    else lives on the upper branch.
    """

    x: float
    y: float
    branch: Branch = Branch.UPPER

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))


@dataclass(frozen=True)
class SampleRange:
    """Uniform sampling grid over heights [y_min, y_max], endpoints included."""

    y_min: float
    y_max: float
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "y_min", float(self.y_min))
        object.__setattr__(self, "y_max", float(self.y_max))
        if not (self.y_min >= 0.0):
            raise LocusError(f"y_min must be nonnegative, got {self.y_min}")
        if not (self.y_min < self.y_max):
            raise LocusError(f"need y_min < y_max, got [{self.y_min}, {self.y_max}]")
        if self.n < 2:
            raise LocusError(f"need at least 2 samples, got {self.n}")

    def heights(self) -> list[float]:
        step = (self.y_max - self.y_min) / (self.n - 1)
        values = [self.y_min + i * step for i in range(self.n)]
        values[-1] = self.y_max
        return values


def _check_kind_params(kind: ConicKind, base_L: float, lam: float | None) -> None:
    if not (base_L > 0.0):
        raise LocusError(f"base length must be positive, got {base_L}")
    if kind is ConicKind.PARABOLA:
        if lam is not None:
            raise LocusError("the parabola (exact application) takes no aspect ratio")
    else:
        if lam is None:
            raise LocusError(f"the {kind.value} requires the aspect ratio lambda")
        if not (lam > 0.0):
            raise LocusError(f"aspect ratio must be positive, got {lam}")


def sample_locus(
    kind: ConicKind,
    base_L: float,
    sample_range: SampleRange,
    lam: float | None = None,
) -> list[LocusPoint]:
    """Trace the locus by running the matching construction at each height.

    Heights are uniform on the range. Every point is read off the
    constructed intersection J, not evaluated from a formula. For the
    hyperbola the result also contains the lower-branch reflections
    across the conjugate axis, appended after the upper block; each
    block is ordered by ascending y.

    Heights must be strictly constructible: y > 0 everywhere, and
    lam * y_max < L for the ellipse (at lam*y = L the applied rectangle
    vanishes).
    """
    base_L = float(base_L)
    _check_kind_params(kind, base_L, lam)
    if sample_range.y_min <= 0.0:
        raise LocusError("sample heights must be positive: the applied rectangle vanishes at y = 0")
    if kind is ConicKind.ELLIPSE:
        assert lam is not None
        if lam * sample_range.y_max >= base_L:
            raise LocusError(
                f"ellipse heights must stay below L/lambda = {base_L / lam}: "
                "the deficiency would consume the whole base"
            )
    uppers: list[LocusPoint] = []
    for height in sample_range.heights():
        if kind is ConicKind.PARABOLA:
            result = apply_exact(base_L, height)
        elif kind is ConicKind.ELLIPSE:
            assert lam is not None
            result = apply_deficient(base_L, lam, height)
        else:
            assert lam is not None
            result = apply_excess(base_L, lam, height)
        uppers.append(LocusPoint(result.square_side_g, height, Branch.UPPER))
    if kind is not ConicKind.HYPERBOLA:
        return uppers
    assert lam is not None
    # Reflection across the conjugate axis y = -L/(2*lam): y -> -L/lam - y.
    mirror_sum = -base_L / lam
    lowers = [LocusPoint(p.x, mirror_sum - p.y, Branch.LOWER) for p in uppers]
    lowers.sort(key=lambda p: p.y)
    return uppers + lowers


def mirror(points: Sequence[LocusPoint]) -> list[LocusPoint]:
    """Append the (-x, y) mirror images; points on the axis self-mirror."""
    mirrored = [LocusPoint(-p.x, p.y, p.branch) for p in points if p.x != 0.0]
    return list(points) + mirrored


@dataclass(frozen=True)
class ConicSpec:
    """Closed-form parameters of a traced conic.

    Fields that do not apply to a kind are absent (None/empty) rather
    than zero-filled; the asymptote fields exist only for the hyperbola.
    Vertices are the curve's points on the height axis.
    """

    kind: ConicKind
    base_L: float
    lam: float | None = None
    center: Point | None = None
    semi_axis_x: float | None = None
    semi_axis_y: float | None = None
    vertices: tuple[Point, ...] = ()
    eccentricity: float | None = None
    asymptote_slopes: tuple[float, float] | None = None
    conjugate_axis_y: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.kind is ConicKind.ELLIPSE:
            if self.eccentricity is None or not (0.0 <= self.eccentricity < 1.0):
                raise LocusError(f"ellipse eccentricity must be in [0, 1), got {self.eccentricity}")
        if self.kind is ConicKind.HYPERBOLA:
            if self.eccentricity is None or not (self.eccentricity > 1.0):
                raise LocusError(f"hyperbola eccentricity must exceed 1, got {self.eccentricity}")
        has_asymptotes = self.asymptote_slopes is not None or self.conjugate_axis_y is not None
        if has_asymptotes != (self.kind is ConicKind.HYPERBOLA):
            raise LocusError("asymptote fields are present exactly for the hyperbola")

    def implicit_coefficients(self) -> tuple[float, float, float, float, float, float]:
        """Coefficients (a, b, c, d, e, f) of a*x^2 + b*xy + c*y^2 + d*x + e*y + f = 0.

        Gauge-normalized so the largest-magnitude coefficient is +1,
        matching the normalization of ``fit_conic_oracle``.
        """
        if self.kind is ConicKind.PARABOLA:
            raw = (1.0, 0.0, 0.0, 0.0, -self.base_L, 0.0)
        elif self.kind is ConicKind.ELLIPSE:
            assert self.lam is not None
            raw = (1.0, 0.0, self.lam, 0.0, -self.base_L, 0.0)
        else:
            assert self.lam is not None
            raw = (1.0, 0.0, -self.lam, 0.0, -self.base_L, 0.0)
        return normalize_conic_coefficients(raw)

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "base_L": self.base_L}
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.center is not None:
            out["center"] = [self.center.x, self.center.y]
        if self.semi_axis_x is not None:
            out["semi_axis_x"] = self.semi_axis_x
        if self.semi_axis_y is not None:
            out["semi_axis_y"] = self.semi_axis_y
        if self.vertices:
            out["vertices"] = [[v.x, v.y] for v in self.vertices]
        if self.eccentricity is not None:
            out["eccentricity"] = self.eccentricity
        if self.asymptote_slopes is not None:
            out["asymptote_slopes"] = list(self.asymptote_slopes)
        if self.conjugate_axis_y is not None:
            out["conjugate_axis_y"] = self.conjugate_axis_y
        return out


def conic_params(kind: ConicKind, base_L: float, lam: float | None = None) -> ConicSpec:
    """Closed-form conic parameters for the given base length and aspect ratio.

    Parabola: x**2 = L*y, vertex at the origin. Ellipse: center
    (0, L/(2*lam)), semi-axes L/(2*sqrt(lam)) along the base and
    L/(2*lam) along the height, eccentricity sqrt(1 - lam) for lam <= 1
    (a circle of radius L/2 at lam = 1) and sqrt(1 - 1/lam) otherwise.
    Hyperbola: center (0, -L/(2*lam)), vertices (0, 0) and (0, -L/lam),
    asymptotes y = -L/(2*lam) +- x/sqrt(lam), eccentricity sqrt(1 + lam).
    """
    base_L = float(base_L)
    _check_kind_params(kind, base_L, lam)
    if kind is ConicKind.PARABOLA:
        return ConicSpec(kind=kind, base_L=base_L, vertices=(Point(0.0, 0.0, "A"),))
    assert lam is not None
    lam = float(lam)
    half_height = base_L / (2.0 * lam)
    half_width = base_L / (2.0 * math.sqrt(lam))
    if kind is ConicKind.ELLIPSE:
        ecc = math.sqrt(1.0 - lam) if lam <= 1.0 else math.sqrt(1.0 - 1.0 / lam)
        return ConicSpec(
            kind=kind,
            base_L=base_L,
            lam=lam,
            center=Point(0.0, half_height),
            semi_axis_x=half_width,
            semi_axis_y=half_height,
            vertices=(Point(0.0, 0.0, "A"), Point(0.0, base_L / lam)),
            eccentricity=ecc,
        )
    root_lam = math.sqrt(lam)
    return ConicSpec(
        kind=kind,
        base_L=base_L,
        lam=lam,
        center=Point(0.0, -half_height),
        semi_axis_x=half_width,
        semi_axis_y=half_height,
        vertices=(Point(0.0, 0.0, "A"), Point(0.0, -base_L / lam, "A*")),
        eccentricity=math.sqrt(1.0 + lam),
        asymptote_slopes=(1.0 / root_lam, -1.0 / root_lam),
        conjugate_axis_y=-half_height,
    )


def max_applicable_area(base_L: float, lam: float) -> tuple[float, float]:
    """Largest area a deficient application can hold, and the base it sits on.

    Returns (L**2 / (4*lam), L/2): the maximal rectangle is the one
    applied to half the segment.
    """
    base_L = float(base_L)
    lam = float(lam)
    if not (base_L > 0.0 and lam > 0.0):
        raise LocusError("base length and aspect ratio must be positive")
    return base_L * base_L / (4.0 * lam), base_L / 2.0


def _vertex_residual(p: LocusPoint, kind: ConicKind, base_L: float, lam: float | None) -> float:
    y = p.y
    if kind is ConicKind.HYPERBOLA and p.branch is Branch.LOWER:
        assert lam is not None
        y = -base_L / lam - y
    rhs = base_L * y
    if kind is ConicKind.ELLIPSE:
        assert lam is not None
        rhs -= lam * y * y
    elif kind is ConicKind.HYPERBOLA:
        assert lam is not None
        rhs += lam * y * y
    return abs(p.x * p.x - rhs)


def _standard_residual(p: LocusPoint, kind: ConicKind, base_L: float, lam: float | None) -> float:
    if kind is ConicKind.PARABOLA:
        # x**2 = L*y is already the standard form.
        return _vertex_residual(p, kind, base_L, lam)
    assert lam is not None
    a = base_L / (2.0 * math.sqrt(lam))
    b = base_L / (2.0 * lam)
    if kind is ConicKind.ELLIPSE:
        return abs(p.x * p.x / (a * a) + (p.y - b) ** 2 / (b * b) - 1.0)
    # Symmetric in (y + b), so both branches check directly.
    return abs((p.y + b) ** 2 / (b * b) - p.x * p.x / (a * a) - 1.0)


@dataclass(frozen=True)
class VerificationReport:
    """Residual summary for a point set against a conic's equations.

    ``max_residual`` is over the vertex-form equation (x**2 versus
    L*y -+ lam*y**2, with lower-branch points reflected first);
    ``max_standard_residual`` is over the dimensionless standard form.
    The pass flag compares the vertex-form maximum against
    ``tol * max(1, L**2)``, the natural area scale of the residual.
    """

    kind: ConicKind
    base_L: float
    lam: float | None
    tol: float
    threshold: float
    passed: bool
    max_residual: float
    worst: LocusPoint | None
    max_standard_residual: float
    standard_worst: LocusPoint | None

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "base_L": self.base_L}
        if self.lam is not None:
            out["lambda"] = self.lam
        out["tol"] = self.tol
        out["threshold"] = self.threshold
        out["passed"] = self.passed
        out["max_residual"] = self.max_residual
        if self.worst is not None:
            out["worst"] = [self.worst.x, self.worst.y, self.worst.branch.value]
        out["max_standard_residual"] = self.max_standard_residual
        if self.standard_worst is not None:
            out["standard_worst"] = [
                self.standard_worst.x,
                self.standard_worst.y,
                self.standard_worst.branch.value,
            ]
        return out


def verify_residuals(
    points: Iterable[LocusPoint],
    kind: ConicKind,
    base_L: float,
    lam: float | None = None,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check sampled points against the conic's equations; never raises on failure."""
    base_L = float(base_L)
    _check_kind_params(kind, base_L, lam)
    max_residual = 0.0
    worst: LocusPoint | None = None
    max_standard = 0.0
    standard_worst: LocusPoint | None = None
    for p in points:
        residual = _vertex_residual(p, kind, base_L, lam)
        if worst is None or residual > max_residual:
            max_residual = residual
            worst = p
        standard = _standard_residual(p, kind, base_L, lam)
        if standard_worst is None or standard > max_standard:
            max_standard = standard
            standard_worst = p
    threshold = tol * max(1.0, base_L * base_L)
    return VerificationReport(
        kind=kind,
        base_L=base_L,
        lam=lam,
        tol=tol,
        threshold=threshold,
        passed=max_residual <= threshold,
        max_residual=max_residual,
        worst=worst,
        max_standard_residual=max_standard,
        standard_worst=standard_worst,
    )


def normalize_conic_coefficients(
    coeffs: Sequence[float],
) -> tuple[float, float, float, float, float, float]:
    """Scale a 6-vector of conic coefficients so its largest entry is +1."""
    values = [float(c) for c in coeffs]
    if len(values) != 6:
        raise LocusError(f"expected 6 conic coefficients, got {len(values)}")
    pivot = max(range(6), key=lambda i: abs(values[i]))
    if values[pivot] == 0.0:
        raise DegenerateFitError("all conic coefficients vanish")
    scale = values[pivot]
    # The + 0.0 folds any -0.0 entries back to +0.0.
    out = tuple(v / scale + 0.0 for v in values)
    return out  # type: ignore[return-value]


def fit_conic_oracle(
    points: Sequence[LocusPoint],
) -> tuple[float, float, float, float, float, float]:
    """Least-squares implicit conic through sampled points.

    Builds the design matrix with rows (x^2, xy, y^2, x, y, 1) and takes
    the singular vector of the smallest singular value, normalized so
    the largest-magnitude coefficient is +1. Requires at least 6 points
    in general position; collinear or otherwise degenerate input (a
    null space of dimension above one) is rejected.
    """
    if len(points) < 6:
        raise DegenerateFitError(f"need at least 6 points to pin down a conic, got {len(points)}")
    rows = np.array(
        [[p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0] for p in points], dtype=float
    )
    _, singular, vt = np.linalg.svd(rows)
    if singular[4] <= 1e-10 * singular[0]:
        raise DegenerateFitError("points do not determine a unique conic (degenerate configuration)")
    return normalize_conic_coefficients(vt[-1])


def write_locus_csv(points: Iterable[LocusPoint], path: str | FilePath) -> None:
    """Write points as CSV with header ``x,y,branch`` at full precision."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "y", "branch"])
        for p in points:
            writer.writerow([repr(p.x), repr(p.y), p.branch.value])


def read_locus_csv(path: str | FilePath) -> list[LocusPoint]:
    """Read points from the ``x,y,branch`` CSV format."""
    points: list[LocusPoint] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [cell.strip().lower() for cell in header] != ["x", "y", "branch"]:
            raise LocusError(f"expected header 'x,y,branch' in {path}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise LocusError(f"{path}:{line_no}: expected 3 columns, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError as exc:
                raise LocusError(f"{path}:{line_no}: bad coordinate: {exc}") from exc
            try:
                branch = Branch(row[2].strip().lower())
            except ValueError as exc:
                raise LocusError(f"{path}:{line_no}: bad branch tag {row[2]!r}") from exc
            points.append(LocusPoint(x, y, branch))
    return points
