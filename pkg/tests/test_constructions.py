import json
import math

import numpy as np
import pytest

from areaconics.constructions import (
    ApplicationKind,
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
from areaconics.kernel import Point, distance


def test_apply_exact_reference_case():
    # by hand: E=(-1,0), F=(1.5,0), radius 2.5, AG^2 = 2.5^2 - 1.5^2 = 4
    result = apply_exact(4, 1)
    points = result.figure_points
    assert points["E"] == Point(-1.0, 0.0, "E")
    assert points["F"] == Point(1.5, 0.0, "F")
    assert distance(points["F"], points["E"]) == 2.5
    assert result.square_side_g == 2.0
    assert (result.J.x, result.J.y) == (2.0, 1.0)
    assert result.rect_base_b == 4.0
    assert result.area_X == 4.0
    assert set(points) == {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"}


def test_apply_exact_square_case():
    result = apply_exact(1, 1)
    assert result.square_side_g == 1.0
    assert (result.J.x, result.J.y) == (1.0, 1.0)


def test_apply_exact_tall_case():
    # base shorter than height: g = sqrt(1*4) = 2
    result = apply_exact(1, 4)
    assert result.square_side_g == pytest.approx(2.0, rel=1e-12)
    assert result.square_side_g > result.spec.base_L


def test_apply_deficient_examples():
    result = apply_deficient(4, 1, 1)
    assert result.rect_base_b == 3.0
    assert result.area_X == 3.0
    assert result.square_side_g == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert (result.J.x, result.J.y) == pytest.approx((math.sqrt(3.0), 1.0), rel=1e-12)
    assert set(result.figure_points) == {
        "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "B⁻", "C⁻",
    }
    assert result.figure_points["B⁻"] == Point(3.0, 0.0, "B⁻")

    maximal = apply_deficient(4, 1, 2)
    assert maximal.rect_base_b == 2.0
    assert maximal.area_X == 4.0  # L^2/(4 lambda)

    sliver = apply_deficient(4, 1, 3.999)
    assert sliver.rect_base_b == pytest.approx(0.001, rel=1e-9)
    assert sliver.area_X == pytest.approx(0.003999, rel=1e-9)
    assert sliver.square_side_g == pytest.approx(math.sqrt(0.001 * 3.999), rel=1e-9)


def test_apply_deficient_infeasible():
    with pytest.raises(DeficiencyExceedsBaseError):
        apply_deficient(4, 1, 5)
    with pytest.raises(DeficiencyExceedsBaseError):
        apply_deficient(4, 1, 4)  # lambda*y == L exactly


def test_apply_excess_examples():
    result = apply_excess(2, 1, 1)
    assert result.rect_base_b == 3.0
    assert result.area_X == 3.0
    assert result.square_side_g == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert set(result.figure_points) == {
        "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "B⁺", "C⁺",
    }

    shallow = apply_excess(1, 1, 0.1)
    assert shallow.rect_base_b == pytest.approx(1.1, rel=1e-12)
    assert shallow.area_X == pytest.approx(0.11, rel=1e-12)
    assert shallow.square_side_g == pytest.approx(math.sqrt(0.11), rel=1e-12)

    steep = apply_excess(1, 4, 2)  # applied base shorter than height
    assert steep.rect_base_b == 9.0
    assert steep.area_X == 18.0
    assert steep.square_side_g == pytest.approx(math.sqrt(18.0), rel=1e-12)


def test_domain_errors():
    for bad in (0.0, -1.0):
        with pytest.raises(ConstructionError):
            apply_exact(bad, 1)
        with pytest.raises(ConstructionError):
            apply_exact(1, bad)
        with pytest.raises(ConstructionError):
            apply_excess(1, bad, 1)
    with pytest.raises(ConstructionError):
        ApplicationSpec(ApplicationKind.EXACT, 1.0, 1.0, lam=2.0)
    with pytest.raises(ConstructionError):
        ApplicationSpec(ApplicationKind.DEFICIENT, 4.0, 1.0)  # lambda missing


def test_construction_matches_algebra():
    rng = np.random.default_rng(101)
    for _ in range(1000):
        base, height = (float(v) for v in rng.uniform(0.1, 100.0, 2))
        g = apply_exact(base, height).square_side_g
        assert abs(g * g - base * height) <= 1e-9 * base * height

    for _ in range(300):
        base = float(rng.uniform(0.1, 100.0))
        lam = float(rng.uniform(0.1, 10.0))
        height = float(rng.uniform(0.02, 0.98)) * base / lam
        g = apply_deficient(base, lam, height).square_side_g
        expected = base * height - lam * height * height
        assert abs(g * g - expected) <= 1e-9 * max(1.0, base * height)

        height = float(rng.uniform(0.1, 100.0))
        g = apply_excess(base, lam, height).square_side_g
        expected = base * height + lam * height * height
        assert abs(g * g - expected) <= 1e-9 * max(1.0, base * height + lam * height * height)


def test_bisection_identity():
    # (EA)(AB) + AF^2 == EF^2 for the constructed exact configuration
    rng = np.random.default_rng(55)
    for _ in range(200):
        base, height = (float(v) for v in rng.uniform(0.1, 50.0, 2))
        pts = apply_exact(base, height).figure_points
        ea = distance(pts["E"], pts["A"])
        ab = distance(pts["A"], pts["B"])
        af = distance(pts["A"], pts["F"])
        ef = distance(pts["E"], pts["F"])
        assert abs(ea * ab + af * af - ef * ef) <= 1e-9 * max(1.0, ef * ef)


def test_monotonicity_of_square_side():
    heights = [0.1 * k for k in range(1, 40)]
    exact = [apply_exact(4, y).square_side_g for y in heights]
    assert all(a < b for a, b in zip(exact, exact[1:]))
    excess = [apply_excess(4, 2, y).square_side_g for y in heights]
    assert all(a < b for a, b in zip(excess, excess[1:]))

    # deficient: increasing up to L/(2 lambda) = 2, then decreasing
    rising = [apply_deficient(4, 1, y).square_side_g for y in (0.5, 1.0, 1.5, 2.0)]
    assert all(a < b for a, b in zip(rising, rising[1:]))
    falling = [apply_deficient(4, 1, y).square_side_g for y in (2.0, 2.5, 3.0, 3.5)]
    assert all(a > b for a, b in zip(falling, falling[1:]))


def test_solve_height_exact():
    assert solve_height_for_area(ApplicationKind.EXACT, 4, 4) == [1.0]


def test_solve_height_deficient_roots():
    # y^2 - 4y + 3 factors as (y-1)(y-3)
    roots = solve_height_for_area(ApplicationKind.DEFICIENT, 4, 3, lam=1)
    assert roots == pytest.approx([1.0, 3.0], rel=1e-12)
    # both roots reproduce the requested area through the construction
    for y in roots:
        assert apply_deficient(4, 1, y).area_X == pytest.approx(3.0, rel=1e-12)


def test_solve_height_deficient_vieta():
    rng = np.random.default_rng(77)
    for _ in range(200):
        base = float(rng.uniform(0.5, 20.0))
        lam = float(rng.uniform(0.1, 10.0))
        area = float(rng.uniform(0.01, 0.99)) * base * base / (4.0 * lam)
        lo, hi = solve_height_for_area(ApplicationKind.DEFICIENT, base, area, lam=lam)
        assert lo <= hi
        assert lo + hi == pytest.approx(base / lam, rel=1e-9)
        assert lo * hi == pytest.approx(area / lam, rel=1e-9)


def test_solve_height_deficient_maximum_duplicates_root():
    roots = solve_height_for_area(ApplicationKind.DEFICIENT, 4, 4, lam=1)
    assert roots == [2.0, 2.0]
    assert apply_deficient(4, 1, 2.0).rect_base_b == 2.0


def test_solve_height_infeasible_area():
    with pytest.raises(InfeasibleAreaError, match="maximum applicable area"):
        solve_height_for_area(ApplicationKind.DEFICIENT, 4, 5, lam=1)


def test_solve_height_excess():
    roots = solve_height_for_area(ApplicationKind.EXCESS, 2, 3, lam=1)
    assert roots == pytest.approx([1.0], rel=1e-12)
    rng = np.random.default_rng(78)
    for _ in range(100):
        base = float(rng.uniform(0.5, 20.0))
        lam = float(rng.uniform(0.1, 10.0))
        area = float(rng.uniform(0.1, 200.0))
        (root,) = solve_height_for_area(ApplicationKind.EXCESS, base, area, lam=lam)
        assert root > 0
        assert lam * root * root + base * root == pytest.approx(area, rel=1e-9)


def test_solve_height_argument_errors():
    with pytest.raises(ConstructionError):
        solve_height_for_area(ApplicationKind.EXACT, 4, 4, lam=1)
    with pytest.raises(ConstructionError):
        solve_height_for_area(ApplicationKind.EXCESS, 4, 4)
    with pytest.raises(ConstructionError):
        solve_height_for_area(ApplicationKind.EXACT, -1, 4)
    with pytest.raises(ConstructionError):
        solve_height_for_area(ApplicationKind.EXACT, 4, 0)


@pytest.mark.parametrize(
    "build",
    [
        lambda: apply_exact(4, 1),
        lambda: apply_deficient(4, 1, 1),
        lambda: apply_excess(2, 1, 1),
        lambda: apply_exact(2, 4.5),
    ],
)
def test_replay_reproduces_points_bit_exactly(build):
    result = build()
    replayed = replay_trace(result.trace)
    assert replayed == result.figure_points

    # through JSON serialization as well
    round_tripped = ConstructionTrace.from_json(result.trace.to_json())
    assert replay_trace(round_tripped) == result.figure_points


def test_replay_examples():
    result = apply_exact(4, 1)
    replayed = replay_trace(result.trace)
    assert replayed["G"] == Point(0.0, 2.0, "G")
    assert replayed["J"] == Point(2.0, 1.0, "J")


def test_replay_is_deterministic():
    trace = apply_deficient(4, 1, 1).trace
    assert replay_trace(trace) == replay_trace(trace)


def test_empty_trace():
    initial = (Point(0, 0, "A"), Point(4, 0, "B"))
    assert replay_trace(ConstructionTrace(initial, ())) == {
        "A": Point(0, 0, "A"),
        "B": Point(4, 0, "B"),
    }


def test_trace_undefined_label():
    initial = (Point(0, 0, "A"), Point(4, 0, "B"))
    step = ConstructionStep(StepOp.BISECT, ("Q", "B"), "F", "I.10")
    with pytest.raises(MalformedTraceError, match="'Q'"):
        replay_trace(ConstructionTrace(initial, (step,)))


def test_trace_duplicate_output_label():
    initial = (Point(0, 0, "A"), Point(4, 0, "B"))
    step = ConstructionStep(StepOp.BISECT, ("A", "B"), "A", "I.10")
    with pytest.raises(MalformedTraceError, match="already defined"):
        replay_trace(ConstructionTrace(initial, (step,)))


def test_trace_geometric_failure():
    initial = (Point(0, 0, "A"), Point(1, 0, "B"), Point(3, 0, "P"))
    steps = (
        ConstructionStep(StepOp.DESCRIBE_CIRCLE, ("A", "A", "B"), "small", "Post.3"),
        ConstructionStep(StepOp.ERECT_PERPENDICULAR, ("P", "A", "P"), "far", "I.11"),
        ConstructionStep(StepOp.INTERSECT_CIRCLE_LINE, ("small", "far"), "X", "I.3"),
    )
    with pytest.raises(GeometricFailureError):
        replay_trace(ConstructionTrace(initial, steps))


def test_trace_arity_and_labels_validated():
    with pytest.raises(MalformedTraceError):
        ConstructionStep(StepOp.BISECT, ("A",), "F", "I.10")
    with pytest.raises(MalformedTraceError):
        ConstructionStep(StepOp.BISECT, ("A", "B"), "", "I.10")
    with pytest.raises(MalformedTraceError):
        ConstructionStep(StepOp.BISECT, ("A", "B"), "F", "")
    with pytest.raises(MalformedTraceError):
        ConstructionTrace((Point(0, 0),), ())  # unlabeled initial point


def test_trace_json_schema():
    trace = apply_exact(4, 1).trace
    doc = json.loads(trace.to_json())
    assert set(doc) == {"initial", "steps"}
    assert doc["initial"][0] == {"label": "A", "x": 0.0, "y": 0.0}
    first = doc["steps"][0]
    assert set(first) == {"op", "inputs", "output", "citation"}
    assert first["op"] == "Extend"
    assert first["output"] == "E"
    # every step cites a proposition
    assert all(step["citation"] for step in doc["steps"])


def test_trace_from_json_malformed():
    with pytest.raises(MalformedTraceError):
        ConstructionTrace.from_json("not json")
    with pytest.raises(MalformedTraceError):
        ConstructionTrace.from_json(json.dumps({"steps": []}))
    with pytest.raises(MalformedTraceError):
        ConstructionTrace.from_json(
            json.dumps(
                {
                    "initial": [{"label": "A", "x": 0, "y": 0}],
                    "steps": [{"op": "Undefined", "inputs": [], "output": "X", "citation": "I.1"}],
                }
            )
        )


def test_result_invariants_random_spot_checks():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        base = float(rng.uniform(0.5, 30.0))
        lam = float(rng.uniform(0.2, 5.0))
        height = float(rng.uniform(0.02, 0.95)) * base / lam
        result = apply_deficient(base, lam, height)
        assert result.area_X == pytest.approx(result.rect_base_b * height, rel=1e-12)
        assert result.square_side_g**2 == pytest.approx(result.area_X, rel=1e-9)
        assert result.J.x == pytest.approx(result.square_side_g, rel=1e-12)
        assert result.J.y == pytest.approx(height, rel=1e-12)
