import json
import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import LN_RANGE
from errors import DomainViolation, Unconverged
from export import PwlFunction, emit_error_profile, export_pwl, result_document, trace_frame
from interval_error import Criterion
from sam_optimizer import SamConfig, optimize

MINMAX = SamConfig(criterion=Criterion.MINMAX_ABS)

DOC_KEYS = [
    "function", "criterion", "range", "n", "tolerance", "converged", "sweeps",
    "breakpoints", "pieces", "e_max", "area_error", "trace",
]


@pytest.fixture
def ln_result(ln):
    return optimize(ln, LN_RANGE, 5, MINMAX)


def test_export_of_the_ln_optimum(ln, ln_result):
    pwl = export_pwl(ln_result, ln)
    assert len(pwl.pieces) == 4
    first = pwl.pieces[0]
    assert first.lo == 0.1
    assert first.slope == pytest.approx(5.3246, abs=1e-3)
    assert pwl.achieved_e_max == ln_result.e_max
    assert pwl.achieved_area == ln_result.total_area
    assert pwl.function_name == "ln"


def test_pieces_are_contiguous_and_interpolate(ln, ln_result):
    pwl = export_pwl(ln_result, ln)
    for left, right in zip(pwl.pieces, pwl.pieces[1:]):
        assert left.hi == right.lo
    for piece in pwl.pieces:
        assert piece(piece.lo) == pytest.approx(math.log(piece.lo), abs=1e-10)
        assert piece(piece.hi) == pytest.approx(math.log(piece.hi), abs=1e-10)
    assert pwl.max_junction_mismatch() <= 1e-10


def test_two_points_give_the_global_chord(ln):
    res = optimize(ln, LN_RANGE, 2, MINMAX)
    pwl = export_pwl(res, ln)
    assert len(pwl.pieces) == 1
    assert pwl.pieces[0].slope == pytest.approx((math.log(10.0) - math.log(0.1)) / 9.9)
    assert pwl.max_junction_mismatch() == 0.0


def test_pwl_evaluation(ln, ln_result):
    pwl = export_pwl(ln_result, ln)
    for x in ln_result.breakpoints:
        assert pwl(x) == pytest.approx(math.log(x), abs=1e-10)
    xs = np.linspace(0.1, 10.0, 101)
    assert np.max(np.abs(np.log(xs) - pwl(xs))) <= ln_result.e_max + 1e-12
    with pytest.raises(DomainViolation):
        pwl(10.5)


def test_json_round_trip_is_exact(ln, ln_result):
    pwl = export_pwl(ln_result, ln)
    back = PwlFunction.from_json(pwl.to_json())
    assert back == pwl
    assert back.breakpoints.points == pwl.breakpoints.points


def test_unconverged_results_need_the_flag(ln):
    res = optimize(ln, LN_RANGE, 8, replace(MINMAX, max_sweeps=1))
    with pytest.raises(Unconverged):
        export_pwl(res, ln)
    assert len(export_pwl(res, ln, allow_unconverged=True).pieces) == 7


def test_result_document_layout(ln, ln_result):
    doc = result_document(ln_result, export_pwl(ln_result, ln))
    assert list(doc) == DOC_KEYS
    assert doc["range"] == {"lo": 0.1, "hi": 10.0}
    assert doc["n"] == 5 and doc["converged"] is True
    assert list(doc["pieces"][0]) == ["lo", "hi", "slope", "intercept"]
    assert list(doc["trace"][0]) == ["sweep", "e_max", "area_error", "max_movement"]
    assert doc["trace"][0]["max_movement"] is None
    assert len(doc["trace"]) == doc["sweeps"] + 1
    # plain Python numbers only
    json.dumps(doc, allow_nan=False)


def test_trace_frame_columns(ln_result):
    df = trace_frame(ln_result)
    assert list(df.columns) == ["sweep", "e_max", "area_error", "max_movement"]
    assert math.isnan(df["max_movement"].iloc[0])


# ---------- error profile ----------
def test_profile_of_the_optimum_peaks_evenly(ln, ln_result):
    df = emit_error_profile(ln, ln_result.breakpoints, 400)
    assert list(df.columns) == ["x", "error"]
    bps = ln_result.breakpoints.points
    for lo, hi in zip(bps, bps[1:]):
        piece = df[(df.x >= lo) & (df.x <= hi)]
        assert piece.error.max() == pytest.approx(0.16272, abs=5e-4)
    on_breakpoints = df[df.x.isin(bps)]
    assert len(on_breakpoints) == len(bps)
    assert on_breakpoints.error.abs().max() < 1e-12


def test_profile_of_the_uniform_start(ln, ln_result):
    df = emit_error_profile(ln, ln_result.trace[0].points, 400)
    first = df[df.x <= ln_result.trace[0].points[1]]
    assert first.error.max() == pytest.approx(1.1620, abs=1e-3)
    assert df.error.idxmax() == first.error.idxmax()


def test_profile_agrees_with_the_reports(ln, ln_result):
    df = emit_error_profile(ln, ln_result.breakpoints, 400)
    worst = max(r.max_abs_error for r in ln_result.reports)
    assert df.error.max() <= worst + 1e-12
    assert df.error.max() == pytest.approx(worst, abs=1e-4)
