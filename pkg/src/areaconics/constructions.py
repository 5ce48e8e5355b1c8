"""Replayable straightedge-and-compass applications of areas.

An application places a rectangle of prescribed area against a base
segment AB in one of three ways: exactly on AB, falling short of B by a
rectangle similar to a reference shape (aspect ratio lambda), or
exceeding B by such a rectangle. In every case a companion square of
equal area is erected at A by the classical semicircle construction:
extend the base beyond A by the rectangle height, bisect the extended
span, and intersect the semicircle over it with the perpendicular at A.
The square side g then satisfies

    g**2 = b * y      with b = L, L - lambda*y, or L + lambda*y,

and the rectangle and square boundaries meet at J = (g, y). Each
construction is recorded as an ordered list of proposition-cited steps
(a trace) that can be serialized to JSON and replayed bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .kernel import (
    Circle,
    Line,
    Point,
    Segment,
    distance,
    erect_perpendicular,
    extend_along_ray,
    intersect_circle_line,
    line_through,
    midpoint,
)

__all__ = [
    "ApplicationKind",
    "ApplicationResult",
    "ApplicationSpec",
    "ConstructionError",
    "ConstructionStep",
    "ConstructionTrace",
    "DeficiencyExceedsBaseError",
    "GeometricFailureError",
    "InfeasibleAreaError",
    "MalformedTraceError",
    "StepOp",
    "apply_deficient",
    "apply_exact",
    "apply_excess",
    "replay_trace",
    "solve_height_for_area",
]


class ConstructionError(ValueError):
    """Invalid parameters for an application of areas."""


class DeficiencyExceedsBaseError(ConstructionError):
    """The deficiency rectangle would consume the whole base segment."""


class InfeasibleAreaError(ConstructionError):
    """The requested area exceeds what a deficient application can hold."""


class MalformedTraceError(ValueError):
    """A construction trace violates label or structural discipline."""


class GeometricFailureError(ValueError):
    """A replayed intersection step found no intersection."""


class ApplicationKind(Enum):
    EXACT = "exact"
    DEFICIENT = "deficient"
    EXCESS = "excess"


class StepOp(Enum):
    EXTEND = "Extend"
    BISECT = "Bisect"
    DESCRIBE_CIRCLE = "DescribeCircle"
    ERECT_PERPENDICULAR = "ErectPerpendicular"
    INTERSECT_CIRCLE_LINE = "IntersectCircleLine"
    MARK_SEGMENT = "MarkSegment"


_STEP_ARITY = {
    StepOp.EXTEND: 4,
    StepOp.BISECT: 2,
    StepOp.DESCRIBE_CIRCLE: 3,
    StepOp.ERECT_PERPENDICULAR: 3,
    StepOp.INTERSECT_CIRCLE_LINE: 2,
    StepOp.MARK_SEGMENT: 2,
}


@dataclass(frozen=True)
class ConstructionStep:
    """One primitive construction step.

    Input semantics by op (all inputs are labels of earlier entities):

    - ``Extend [through, frm, p, q]``: point at distance |pq| beyond
      ``through`` on the ray from ``frm`` through ``through``.
    - ``Bisect [p, q]``: midpoint of pq.
    - ``DescribeCircle [center, p, q]``: circle centered at ``center``
      with radius |pq| (the compass transfers the distance).
    - ``ErectPerpendicular [at, p, q]``: perpendicular at ``at`` to the
      line through p and q.
    - ``IntersectCircleLine [circle, line]``: the highest intersection
      point (the semicircle-side choice); fails if the two do not meet.
    - ``MarkSegment [p, q]``: names the segment pq for later reference.

    The citation is the Elements proposition backing the step, e.g.
    "I.10" or "II.14"; it is documentation payload, not control flow.
    """

    op: StepOp
    inputs: tuple[str, ...]
    output: str
    citation: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        expected = _STEP_ARITY[self.op]
        if len(self.inputs) != expected:
            raise MalformedTraceError(
                f"{self.op.value} expects {expected} inputs, got {len(self.inputs)}"
            )
        if not self.output:
            raise MalformedTraceError("step output label must be non-empty")
        if not self.citation:
            raise MalformedTraceError("step citation must be non-empty")


@dataclass(frozen=True)
class ConstructionTrace:
    """Ordered construction steps over an initial labeled configuration.

    ``initial`` holds the given points (always at least A and B; for the
    applications it also carries the applied rectangle's corners, since
    the rectangle itself is the given datum). Label discipline (inputs
    defined before use, outputs unique) is enforced when the trace is
    executed, so malformed traces can be represented and then rejected
    with a precise error.
    """

    initial: tuple[Point, ...]
    steps: tuple[ConstructionStep, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "steps", tuple(self.steps))
        for point in self.initial:
            if point.label is None:
                raise MalformedTraceError("initial points must be labeled")

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "initial": [{"label": p.label, "x": p.x, "y": p.y} for p in self.initial],
            "steps": [
                {
                    "op": s.op.value,
                    "inputs": list(s.inputs),
                    "output": s.output,
                    "citation": s.citation,
                }
                for s in self.steps
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json_dict(cls, data: Any) -> ConstructionTrace:
        if not isinstance(data, dict) or "initial" not in data or "steps" not in data:
            raise MalformedTraceError("trace document must have 'initial' and 'steps' keys")
        try:
            initial = tuple(
                Point(float(entry["x"]), float(entry["y"]), str(entry["label"]))
                for entry in data["initial"]
            )
            steps = tuple(
                ConstructionStep(
                    op=StepOp(entry["op"]),
                    inputs=tuple(str(name) for name in entry["inputs"]),
                    output=str(entry["output"]),
                    citation=str(entry["citation"]),
                )
                for entry in data["steps"]
            )
        except MalformedTraceError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTraceError(f"invalid trace document: {exc}") from exc
        return cls(initial, steps)

    @classmethod
    def from_json(cls, text: str) -> ConstructionTrace:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedTraceError(f"trace document is not valid JSON: {exc}") from exc
        return cls.from_json_dict(data)


def _require(value: Any, cls: type, step: ConstructionStep, name: str) -> Any:
    if not isinstance(value, cls):
        raise MalformedTraceError(
            f"step {step.output!r}: input {name!r} must be a {cls.__name__.lower()}"
        )
    return value


def _apply_step(step: ConstructionStep, args: list[Any]) -> Any:
    if step.op is StepOp.EXTEND:
        through, frm, p, q = (_require(a, Point, step, n) for a, n in zip(args, step.inputs))
        return extend_along_ray(through, frm, distance(p, q)).with_label(step.output)
    if step.op is StepOp.BISECT:
        p, q = (_require(a, Point, step, n) for a, n in zip(args, step.inputs))
        return midpoint(p, q).with_label(step.output)
    if step.op is StepOp.DESCRIBE_CIRCLE:
        center, p, q = (_require(a, Point, step, n) for a, n in zip(args, step.inputs))
        return Circle(center, distance(p, q))
    if step.op is StepOp.ERECT_PERPENDICULAR:
        at, p, q = (_require(a, Point, step, n) for a, n in zip(args, step.inputs))
        return erect_perpendicular(at, line_through(p, q))
    if step.op is StepOp.INTERSECT_CIRCLE_LINE:
        circle = _require(args[0], Circle, step, step.inputs[0])
        line = _require(args[1], Line, step, step.inputs[1])
        points = intersect_circle_line(circle, line)
        if not points:
            raise GeometricFailureError(
                f"step {step.output!r}: circle {step.inputs[0]!r} and line "
                f"{step.inputs[1]!r} do not intersect"
            )
        return points[-1].with_label(step.output)
    # MARK_SEGMENT
    p, q = (_require(a, Point, step, n) for a, n in zip(args, step.inputs))
    return Segment(p, q)


def _execute(trace: ConstructionTrace) -> dict[str, Any]:
    """Run a trace, returning every labeled entity (points, circles, ...)."""
    env: dict[str, Any] = {}
    for point in trace.initial:
        if point.label in env:
            raise MalformedTraceError(f"initial label {point.label!r} defined twice")
        env[point.label] = point
    for step in trace.steps:
        args = []
        for name in step.inputs:
            if name not in env:
                raise MalformedTraceError(f"step input label {name!r} is not defined")
            args.append(env[name])
        if step.output in env:
            raise MalformedTraceError(f"output label {step.output!r} already defined")
        env[step.output] = _apply_step(step, args)
    return env


def replay_trace(trace: ConstructionTrace) -> dict[str, Point]:
    """Execute a trace and return its labeled points.

    Replay is deterministic: the same trace always reproduces identical
    coordinates, bit for bit.
    """
    return {name: value for name, value in _execute(trace).items() if isinstance(value, Point)}


@dataclass(frozen=True)
class ApplicationSpec:
    """Parameters of one application of areas.

    ``lam`` is the aspect ratio (horizontal side / vertical side) of the
    reference rectangle governing the deficiency or excess; it must be
    absent for the exact kind, where no reference rectangle exists.
    """

    kind: ApplicationKind
    base_L: float
    height_y: float
    lam: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "base_L", float(self.base_L))
        object.__setattr__(self, "height_y", float(self.height_y))
        if self.lam is not None:
            object.__setattr__(self, "lam", float(self.lam))
        if not (self.base_L > 0.0):
            raise ConstructionError(f"base length must be positive, got {self.base_L}")
        if not (self.height_y > 0.0):
            raise ConstructionError(f"rectangle height must be positive, got {self.height_y}")
        if self.kind is ApplicationKind.EXACT:
            if self.lam is not None:
                raise ConstructionError("an exact application takes no aspect ratio")
        else:
            if self.lam is None:
                raise ConstructionError(
                    f"a {self.kind.value} application requires the aspect ratio lambda"
                )
            if not (self.lam > 0.0):
                raise ConstructionError(f"aspect ratio must be positive, got {self.lam}")
            if self.kind is ApplicationKind.DEFICIENT and self.lam * self.height_y >= self.base_L:
                raise DeficiencyExceedsBaseError(
                    f"deficiency consumes the base: lambda*height = "
                    f"{self.lam * self.height_y} >= base {self.base_L}"
                )

    @property
    def rect_base(self) -> float:
        """Base length of the applied rectangle (b = L, L - lam*y, or L + lam*y)."""
        if self.kind is ApplicationKind.EXACT:
            return self.base_L
        assert self.lam is not None
        if self.kind is ApplicationKind.DEFICIENT:
            return self.base_L - self.lam * self.height_y
        return self.base_L + self.lam * self.height_y


@dataclass(frozen=True)
class ApplicationResult:
    """Output of one application: figure points, scalars, and the trace.

    Invariants (within tolerance): ``area_X == rect_base_b * height_y``,
    ``square_side_g**2 == area_X``, and ``J == (square_side_g, height_y)``.
    """

    spec: ApplicationSpec
    rect_base_b: float
    area_X: float
    square_side_g: float
    J: Point
    figure_points: dict[str, Point]
    trace: ConstructionTrace

    def summary(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.spec.kind.value, "base_L": self.spec.base_L}
        if self.spec.lam is not None:
            out["lambda"] = self.spec.lam
        out["height_y"] = self.spec.height_y
        out["rect_base_b"] = self.rect_base_b
        out["area_X"] = self.area_X
        out["square_side_g"] = self.square_side_g
        out["J"] = [self.J.x, self.J.y]
        return out


_CORNER_SUFFIX = {ApplicationKind.DEFICIENT: "⁻", ApplicationKind.EXCESS: "⁺"}


def _base_corner_label(kind: ApplicationKind) -> str:
    if kind is ApplicationKind.EXACT:
        return "B"
    return "B" + _CORNER_SUFFIX[kind]


def _given_points(spec: ApplicationSpec) -> tuple[Point, ...]:
    """The given configuration: segment AB plus the applied rectangle corners."""
    base_l, height = spec.base_L, spec.height_y
    points = [
        Point(0.0, 0.0, "A"),
        Point(base_l, 0.0, "B"),
        Point(base_l, height, "C"),
        Point(0.0, height, "D"),
    ]
    if spec.kind is not ApplicationKind.EXACT:
        suffix = _CORNER_SUFFIX[spec.kind]
        b = spec.rect_base
        points.append(Point(b, 0.0, "B" + suffix))
        points.append(Point(b, height, "C" + suffix))
    return tuple(points)


def _construction_steps(base_corner: str) -> tuple[ConstructionStep, ...]:
    """The companion-square construction over the applied rectangle's base.

    The same step sequence serves all three kinds; only the base corner
    label (B, B-minus, or B-plus) differs. Works unchanged whether the
    base is longer or shorter than the height, and in the square case.
    """
    step = ConstructionStep
    op = StepOp
    return (
        # E beyond A, away from the base, with EA equal to the height AD.
        step(op.EXTEND, ("A", base_corner, "A", "D"), "E", "I.3"),
        step(op.BISECT, ("E", base_corner), "F", "I.10"),
        # Semicircle over the extended base, center F, radius FE.
        step(op.DESCRIBE_CIRCLE, ("F", "F", "E"), "EGB", "I.Def.18"),
        step(op.ERECT_PERPENDICULAR, ("A", "A", base_corner), "AG_line", "I.11"),
        # G: the perpendicular at A meets the semicircle; AG is the square side.
        step(op.INTERSECT_CIRCLE_LINE, ("EGB", "AG_line"), "G", "II.14"),
        step(op.MARK_SEGMENT, ("F", "G"), "FG", "Post.1"),
        # The square AIHG on side AG, corner at A, along the base.
        step(op.EXTEND, ("A", "E", "A", "G"), "I", "I.46"),
        step(op.ERECT_PERPENDICULAR, ("I", "A", "I"), "IH_line", "I.46"),
        step(op.DESCRIBE_CIRCLE, ("I", "I", "A"), "I_side", "I.46"),
        step(op.INTERSECT_CIRCLE_LINE, ("I_side", "IH_line"), "H", "I.46"),
        # J: transfer the height AD onto the square's side line through I.
        step(op.DESCRIBE_CIRCLE, ("I", "A", "D"), "I_height", "I.2"),
        step(op.INTERSECT_CIRCLE_LINE, ("I_height", "IH_line"), "J", "I.3"),
    )


def _run_application(spec: ApplicationSpec) -> ApplicationResult:
    trace = ConstructionTrace(_given_points(spec), _construction_steps(_base_corner_label(spec.kind)))
    env = _execute(trace)
    points = {name: value for name, value in env.items() if isinstance(value, Point)}
    square_side = distance(points["A"], points["G"])
    base = spec.rect_base
    return ApplicationResult(
        spec=spec,
        rect_base_b=base,
        area_X=base * spec.height_y,
        square_side_g=square_side,
        J=points["J"],
        figure_points=points,
        trace=trace,
    )


def apply_exact(base_L: float, height_y: float) -> ApplicationResult:
    """Apply a rectangle of base L and height y exactly on the segment AB.

    The companion square has side g with g**2 = L * y. All three height
    regimes (y < L, y == L, y > L) flow through the same construction.
    """
    return _run_application(ApplicationSpec(ApplicationKind.EXACT, base_L, height_y))


def apply_deficient(base_L: float, lam: float, height_y: float) -> ApplicationResult:
    """Apply a rectangle falling short of B by a lam*y by y rectangle.

    The applied base is b = L - lam*y (requires lam*y < L) and the
    companion square side satisfies g**2 = (L - lam*y) * y.
    """
    return _run_application(ApplicationSpec(ApplicationKind.DEFICIENT, base_L, height_y, lam))


def apply_excess(base_L: float, lam: float, height_y: float) -> ApplicationResult:
    """Apply a rectangle exceeding B by a lam*y by y rectangle.

    The applied base is b = L + lam*y and the companion square side
    satisfies g**2 = (L + lam*y) * y.
    """
    return _run_application(ApplicationSpec(ApplicationKind.EXCESS, base_L, height_y, lam))


def solve_height_for_area(
    kind: ApplicationKind,
    base_L: float,
    area_X: float,
    lam: float | None = None,
) -> list[float]:
    """Heights whose application holds the requested area, ascending.

    Exact: the single height area/L. Deficient: the two roots of
    lam*y**2 - L*y + area = 0 (equal at the maximal area L**2/(4*lam),
    which sits over the half-base L/2). Excess: the one positive root of
    lam*y**2 + L*y - area = 0.
    """
    base_L = float(base_L)
    area_X = float(area_X)
    if not (base_L > 0.0):
        raise ConstructionError(f"base length must be positive, got {base_L}")
    if not (area_X > 0.0):
        raise ConstructionError(f"area must be positive, got {area_X}")
    if kind is ApplicationKind.EXACT:
        if lam is not None:
            raise ConstructionError("an exact application takes no aspect ratio")
        return [area_X / base_L]
    if lam is None:
        raise ConstructionError(f"a {kind.value} application requires the aspect ratio lambda")
    lam = float(lam)
    if not (lam > 0.0):
        raise ConstructionError(f"aspect ratio must be positive, got {lam}")
    if kind is ApplicationKind.DEFICIENT:
        max_area = base_L * base_L / (4.0 * lam)
        if area_X > max_area * (1.0 + 1e-9):
            raise InfeasibleAreaError(
                f"area {area_X} exceeds the maximum applicable area "
                f"L^2/(4*lambda) = {max_area} (Elements VI.27)"
            )
        disc = max(0.0, base_L * base_L - 4.0 * lam * area_X)
        # Stable quadratic: large root first, small root via the product.
        y_hi = (base_L + math.sqrt(disc)) / (2.0 * lam)
        y_lo = area_X / (lam * y_hi)
        return [y_lo, y_hi]
    root = math.sqrt(base_L * base_L + 4.0 * lam * area_X)
    return [2.0 * area_X / (base_L + root)]
