"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run `pytest -s tests/test_acceptance.py` to see the verdict lines as the
suite executes; without -s they appear in pytest's captured output.
"""

import json
import math
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from areaconics.cli import run
from areaconics.constructions import (
    ApplicationKind,
    ConstructionTrace,
    apply_deficient,
    apply_exact,
    apply_excess,
    replay_trace,
    solve_height_for_area,
)
from areaconics.figures import FIGURE_PARAMS, SVG_SCALE, standard_figure
from areaconics.locus import (
    Branch,
    ConicKind,
    SampleRange,
    conic_params,
    fit_conic_oracle,
    sample_locus,
)


def _verdict(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"acceptance {number:2d} ({name}): {status}{' - ' + detail if detail and not ok else ''}")
    assert ok, f"acceptance criterion {number} ({name}) failed: {detail}"


def test_criterion_1_exact_agreement():
    rng = np.random.default_rng(20260810)
    bases = rng.uniform(0.1, 100.0, 1000)
    heights = rng.uniform(0.1, 100.0, 1000)
    start = time.perf_counter()
    worst = 0.0
    for base, height in zip(bases, heights):
        base, height = float(base), float(height)
        g = apply_exact(base, height).square_side_g
        worst = max(worst, abs(g * g - base * height) / (base * height))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 1.0
    _verdict(1, "constructed square side squares to L*y", ok,
             f"worst relative residual {worst:.3e}, elapsed {elapsed:.2f}s")


def test_criterion_2_deficient_excess_agreement():
    rng = np.random.default_rng(20260811)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        base = float(rng.uniform(0.1, 100.0))
        lam = float(rng.uniform(0.1, 10.0))
        height = float(rng.uniform(0.01, 0.99)) * base / lam
        g = apply_deficient(base, lam, height).square_side_g
        target = base * height - lam * height * height
        worst = max(worst, abs(g * g - target) / max(1.0, base * height))
    for _ in range(1000):
        base = float(rng.uniform(0.1, 100.0))
        lam = float(rng.uniform(0.1, 10.0))
        height = float(rng.uniform(0.1, 100.0))
        g = apply_excess(base, lam, height).square_side_g
        target = base * height + lam * height * height
        worst = max(worst, abs(g * g - target) / max(1.0, base * height))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 2.0
    _verdict(2, "deficient/excess square sides match L*y -+ lam*y^2", ok,
             f"worst scaled residual {worst:.3e}, elapsed {elapsed:.2f}s")


def test_criterion_3_max_area_scan():
    ok = True
    detail = ""
    for base, lam in ((4.0, 1.0), (2.0, 0.5), (1.0, 4.0)):
        grid = base * np.arange(1, 10**4 + 1) / 10**4
        areas = grid * (base - grid) / lam
        peak = base * base / (4.0 * lam)
        best = int(np.argmax(areas))
        nearest = int(np.argmin(np.abs(grid - base / 2.0)))
        if abs(float(areas[best]) - peak) > 1e-12 * peak:
            ok, detail = False, f"peak {areas[best]} vs {peak} at (L={base}, lam={lam})"
        if best != nearest:
            ok, detail = False, f"argmax {best} != nearest-to-L/2 {nearest}"
        if not np.all(areas <= peak + 1e-12):
            ok, detail = False, "scan exceeded the closed-form maximum"
    _verdict(3, "scanned maximal area equals L^2/(4*lambda) at half-base", ok, detail)


def test_criterion_4_ellipse_features():
    circle = conic_params(ConicKind.ELLIPSE, 2, lam=1)
    ok = (
        circle.eccentricity == 0.0
        and circle.semi_axis_x == 1.0
        and circle.semi_axis_y == 1.0
    )
    tall = conic_params(ConicKind.ELLIPSE, 4, lam=0.75)
    ok = ok and tall.eccentricity == 0.5 and tall.semi_axis_y > tall.semi_axis_x
    ok = ok and tall.semi_axis_y == pytest.approx(8.0 / 3.0, abs=1e-15)
    _verdict(4, "ellipse parameters: circle at lam=1, ecc 0.5 split case", ok)


def test_criterion_5_hyperbola_features():
    spec = conic_params(ConicKind.HYPERBOLA, 2, lam=1)
    ok = (
        abs(spec.center.x) <= 1e-12
        and abs(spec.center.y + 1.0) <= 1e-12
        and abs(spec.vertices[0].x) <= 1e-12
        and abs(spec.vertices[0].y) <= 1e-12
        and abs(spec.vertices[1].y + 2.0) <= 1e-12
        and abs(spec.asymptote_slopes[0] - 1.0) <= 1e-12
        and abs(spec.asymptote_slopes[1] + 1.0) <= 1e-12
        and abs(spec.eccentricity - math.sqrt(2.0)) <= 1e-12
    )
    # approach to the asymptote y = -1 + x: distance |x - y - 1| / sqrt(2)
    distances = []
    for exponent in range(1, 7):
        height = 10.0**exponent
        x = apply_excess(2, 1, height).square_side_g
        distances.append(abs(x - height - 1.0) / math.sqrt(2.0))
    ok = ok and all(a > b for a, b in zip(distances, distances[1:]))
    ok = ok and distances[-1] < 1e-5
    _verdict(5, "hyperbola parameters and asymptote approach", ok,
             f"distances {['%.2e' % d for d in distances]}")


def test_criterion_6_oracle_equivalence():
    cases = (
        (ConicKind.PARABOLA, 4.0, None, SampleRange(0.5, 4.0, 8)),
        (ConicKind.ELLIPSE, 2.0, 1.0, SampleRange(0.2, 1.8, 8)),
        (ConicKind.HYPERBOLA, 2.0, 1.0, SampleRange(0.5, 4.0, 8)),
    )
    ok = True
    detail = ""
    for kind, base, lam, sample_range in cases:
        samples = [
            p for p in sample_locus(kind, base, sample_range, lam) if p.branch is Branch.UPPER
        ]
        assert len(samples) == 8
        fitted = fit_conic_oracle(samples)
        expected = conic_params(kind, base, lam).implicit_coefficients()
        gap = max(abs(a - b) for a, b in zip(fitted, expected))
        if gap > 1e-6:
            ok, detail = False, f"{kind.value}: coefficient gap {gap:.3e}"
    _verdict(6, "least-squares fit recovers the closed-form conic", ok, detail)


def test_criterion_7_degeneration():
    heights = SampleRange(0.01, 1.0, 20)
    parabola = sample_locus(ConicKind.PARABOLA, 1, heights)
    ellipse = sample_locus(ConicKind.ELLIPSE, 1, heights, lam=1e-6)
    hyperbola = [
        p for p in sample_locus(ConicKind.HYPERBOLA, 1, heights, lam=1e-6)
        if p.branch is Branch.UPPER
    ]
    worst = max(
        max(abs(e.x - p.x) for e, p in zip(ellipse, parabola)),
        max(abs(h.x - p.x) for h, p in zip(hyperbola, parabola)),
    )
    _verdict(7, "lam -> 0 collapses ellipse/hyperbola onto the parabola", worst <= 1e-6,
             f"worst gap {worst:.3e}")


def test_criterion_8_trace_replay_bit_exact():
    builds = (apply_exact(4, 1), apply_deficient(4, 1, 1), apply_excess(2, 1, 1))
    ok = True
    for result in builds:
        replayed = replay_trace(ConstructionTrace.from_json(result.trace.to_json()))
        if replayed != result.figure_points:
            ok = False
    _verdict(8, "serialized traces replay every labeled point bit-exactly", ok)


def test_criterion_9_figures():
    ok = True
    detail = ""
    for n in range(1, 10):
        first = standard_figure(n)
        second = standard_figure(n)
        if first != second:
            ok, detail = False, f"figure {n} not byte-identical"
        root = ET.fromstring(first)
        if root.get("version") != "1.1":
            ok, detail = False, f"figure {n} does not declare SVG 1.1"
    svg = standard_figure(9)
    root = ET.fromstring(svg)
    lines = [el for el in root.iter() if el.tag.split("}")[-1] == "line"]
    dashed = [el for el in lines if el.get("stroke-dasharray")]
    inclined = [
        el for el in dashed
        if float(el.get("x1")) != float(el.get("x2"))
        and float(el.get("y1")) != float(el.get("y2"))
    ]
    params = FIGURE_PARAMS[9]
    axis_y = SVG_SCALE * params["base"] / (2.0 * params["lambda"])
    conjugate = [
        el for el in dashed
        if float(el.get("y1")) == float(el.get("y2"))
        and abs(float(el.get("y1")) - axis_y) < 1e-6
    ]
    if len(inclined) != 2:
        ok, detail = False, f"figure 9 has {len(inclined)} inclined dashed lines"
    if len(conjugate) != 1:
        ok, detail = False, f"figure 9 has {len(conjugate)} conjugate-axis lines"
    _verdict(9, "figures 1-9 are valid, deterministic SVG with figure-9 structure", ok, detail)


def test_criterion_10_cli_round_trip(tmp_path, capsys):
    ok = True
    detail = ""
    kinds = (("parabola", []), ("ellipse", ["--lambda", "1"]), ("hyperbola", ["--lambda", "1"]))
    for kind, extra in kinds:
        csv_path = tmp_path / f"{kind}.csv"
        code = run(
            ["locus", "--kind", kind, "--base", "2", *extra, "--y-min", "0.2",
             "--y-max", "1.6", "--samples", "9", "--out", str(csv_path)]
        )
        if code != 0:
            ok, detail = False, f"locus {kind} exited {code}"
        code = run(
            ["verify", "--points", str(csv_path), "--kind", kind, "--base", "2",
             *extra, "--tol", "1e-9"]
        )
        if code != 0:
            ok, detail = False, f"verify {kind} exited {code}"
    capsys.readouterr()

    code = run(["solve", "--kind", "deficient", "--base", "4", "--lambda", "1", "--area", "5"])
    err = capsys.readouterr().err
    if code != 1 or "maximum applicable area" not in err:
        ok, detail = False, f"infeasible area: exit {code}, message {err!r}"

    code = run(["construct", "--kind", "deficient", "--base", "4", "--lambda", "1", "--height", "5"])
    err = capsys.readouterr().err
    if code != 1 or "deficiency" not in err:
        ok, detail = False, f"oversized deficiency: exit {code}, message {err!r}"
    _verdict(10, "CLI locus/verify round trip and documented failures", ok, detail)
