"""
The two error criteria for a chord over one interval, and their aggregation over
a breakpoint set.

Both are reported as nonnegative magnitudes. For concave f the deviation
f(x) - L(x) is nonnegative and unimodal on the interval; convex inputs are
measured on their mirror, which has the same magnitudes. The area criterion is
the integral of |f - L| per piece, which for a one-signed deviation equals the
absolute value of the integral of f - L.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from errors import DomainViolation, NonConcaveDetected
from function_catalog import Interval, ScalarFunction, concave_view
from numerics import (
    DEFAULT_SOLVER,
    SolverConfig,
    adaptive_simpson,
    bisect_decreasing,
    bisect_decreasing_array,
    golden_section_max,
    golden_section_max_array,
)

logger = logging.getLogger(__name__)

MIN_WIDTH = 1e-12
QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 50
NEGATIVE_SLACK = 1e-9
# Interior fractions checked for a negative deviation (a curvature tag that lies).
_SIGN_CHECKS = np.array([0.125, 0.25, 0.5, 0.75, 0.875])


class Criterion(str, Enum):
    MINMAX_ABS = "minmax"
    MIN_AREA = "area"


@dataclass(frozen=True)
class Chord:
    interval: Interval
    slope: float
    intercept: float

    def __call__(self, x):
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class IntervalErrorReport:
    interval: Interval
    argmax_x: float
    max_abs_error: float
    area_error: float | None = None

    def value(self, criterion: Criterion) -> float:
        return self.max_abs_error if criterion is Criterion.MINMAX_ABS else self.area_error


@dataclass(frozen=True)
class SetErrorSummary:
    reports: tuple[IntervalErrorReport, ...]
    e_max: float
    total_area: float

    def objective(self, criterion: Criterion) -> float:
        return self.e_max if criterion is Criterion.MINMAX_ABS else self.total_area

    def worst_index(self, criterion: Criterion = Criterion.MINMAX_ABS) -> int:
        values = [r.value(criterion) for r in self.reports]
        return values.index(max(values))


# ---------- single interval ----------
def _checked(f: ScalarFunction, iv: Interval) -> None:
    f.check_interval(iv)
    if iv.width < MIN_WIDTH:
        raise DomainViolation(f"interval [{iv.lo}, {iv.hi}] is narrower than {MIN_WIDTH}")


def chord_of(f: ScalarFunction, iv: Interval) -> Chord:
    _checked(f, iv)
    f_lo, f_hi = float(f(iv.lo)), float(f(iv.hi))
    slope = (f_hi - f_lo) / (iv.hi - iv.lo)
    return Chord(interval=iv, slope=slope, intercept=f_lo - slope * iv.lo)


def gap_argmax(
    f: ScalarFunction,
    iv: Interval,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    use_closed_form: bool = True,
) -> float:
    """
    Maximizer of the gap f(x) - L(x) over the interval, f concave.

    Tangency path: bisection on f'(x) - slope, which is non-increasing.
    Golden path: golden-section maximization of the gap itself.
    """
    if use_closed_form and f.area_split is not None:
        return float(f.area_split(iv.lo, iv.hi))

    chord = chord_of(f, iv)
    if uses_tangency(f, cfg):
        return bisect_decreasing(
            lambda x: f.slope_at(x) - chord.slope, iv.lo, iv.hi, cfg.bisection_tol, cfg.max_inner_iter
        )
    return golden_section_max(
        lambda x: f(x) - chord(x), iv.lo, iv.hi, cfg.bisection_tol, cfg.max_inner_iter
    )


def uses_tangency(f: ScalarFunction, cfg: SolverConfig) -> bool:
    if cfg.gap_search == "auto":
        return f.derivative is not None
    return cfg.gap_search == "tangency"


def _check_sign(f: ScalarFunction, chord: Chord, iv: Interval) -> None:
    xs = iv.lo + _SIGN_CHECKS * iv.width
    dev = f.eval_array(xs) - chord(xs)
    worst = float(dev.min())
    if worst < -NEGATIVE_SLACK:
        raise NonConcaveDetected(
            f"{f.name} dips {worst:.3e} below its chord on [{iv.lo}, {iv.hi}]; check the curvature tag"
        )


def max_abs_error(
    f: ScalarFunction,
    iv: Interval,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
    use_closed_form: bool = True,
) -> IntervalErrorReport:
    g = concave_view(f, assume_concave=assume_concave)
    chord = chord_of(g, iv)
    x_star = gap_argmax(g, iv, cfg, use_closed_form=use_closed_form)
    err = float(g(x_star)) - chord(x_star)
    if err < -NEGATIVE_SLACK:
        raise NonConcaveDetected(f"{f.name} lies below its chord at x={x_star} on [{iv.lo}, {iv.hi}]")
    _check_sign(g, chord, iv)
    return IntervalErrorReport(interval=iv, argmax_x=x_star, max_abs_error=max(err, 0.0))


def area_error(
    f: ScalarFunction,
    iv: Interval,
    *,
    assume_concave: bool = False,
    exact: bool = True,
) -> float:
    """
    Area between f and its chord over the interval. Uses the antiderivative when
    there is one (and `exact`), adaptive Simpson otherwise.
    """
    g = concave_view(f, assume_concave=assume_concave)
    chord = chord_of(g, iv)
    if exact and g.antiderivative is not None:
        integral = float(g.antiderivative(iv.hi)) - float(g.antiderivative(iv.lo))
        trapezoid = 0.5 * (chord(iv.lo) + chord(iv.hi)) * iv.width
        return abs(integral - trapezoid)
    return abs(adaptive_simpson(lambda x: float(g(x)) - chord(x), iv.lo, iv.hi, QUAD_TOL, QUAD_MAX_DEPTH))


def interval_report(
    f: ScalarFunction, iv: Interval, cfg: SolverConfig = DEFAULT_SOLVER, *, assume_concave: bool = False
) -> IntervalErrorReport:
    report = max_abs_error(f, iv, cfg, assume_concave=assume_concave)
    return IntervalErrorReport(
        interval=iv,
        argmax_x=report.argmax_x,
        max_abs_error=report.max_abs_error,
        area_error=area_error(f, iv, assume_concave=assume_concave),
    )


# ---------- many intervals at once ----------
def interval_metrics(
    f: ScalarFunction,
    lo: np.ndarray,
    hi: np.ndarray,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
    with_area: bool = True,
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None]:
    """
    Vectorized (argmax_x, max_abs_error, area_error) for the intervals [lo[k], hi[k]].
    Same numbers as the scalar functions; the searches run elementwise.
    """
    g = concave_view(f, assume_concave=assume_concave)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.size and float(np.min(hi - lo)) < MIN_WIDTH:
        raise DomainViolation(f"an interval is narrower than {MIN_WIDTH}")

    f_lo = g.eval_array(lo)
    f_hi = g.eval_array(hi)
    slope = (f_hi - f_lo) / (hi - lo)

    def gap(x):
        return g.eval_array(x) - (f_lo + slope * (x - lo))

    if g.area_split is not None:
        x_star = np.asarray(g.area_split(lo, hi), dtype=float)
    elif uses_tangency(g, cfg):
        x_star = bisect_decreasing_array(
            lambda x: g.slope_array(x) - slope, lo, hi, cfg.bisection_tol, cfg.max_inner_iter
        )
    else:
        x_star = golden_section_max_array(gap, lo, hi, cfg.bisection_tol, cfg.max_inner_iter)

    err = gap(x_star)
    if lo.size:
        xs_in = lo[:, None] + _SIGN_CHECKS[None, :] * (hi - lo)[:, None]
        dev = g.eval_array(xs_in) - (f_lo[:, None] + slope[:, None] * (xs_in - lo[:, None]))
        worst = min(float(err.min()), float(dev.min()))
        if worst < -NEGATIVE_SLACK:
            raise NonConcaveDetected(f"{f.name} dips {worst:.3e} below a chord; check the curvature tag")
    err = np.maximum(err, 0.0)

    if not with_area:
        return x_star, err, None
    if g.antiderivative is not None:
        integral = np.asarray(g.antiderivative(hi), dtype=float) - np.asarray(g.antiderivative(lo), dtype=float)
        area = np.abs(integral - 0.5 * (f_lo + f_hi) * (hi - lo))
    else:
        area = np.array([
            abs(adaptive_simpson(
                lambda x, k=k: float(g(x)) - (f_lo[k] + slope[k] * (x - lo[k])),
                lo[k], hi[k], QUAD_TOL, QUAD_MAX_DEPTH,
            ))
            for k in range(lo.size)
        ])
    return x_star, err, area


def _as_points(bps: Iterable[float]) -> np.ndarray:
    xs = np.asarray(tuple(bps), dtype=float)
    if xs.size < 2:
        raise DomainViolation("a breakpoint set needs at least two points")
    if not np.all(np.diff(xs) > 0):
        raise DomainViolation("breakpoints must be strictly increasing")
    return xs


def evaluate_set(
    f: ScalarFunction,
    bps: Sequence[float],
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
) -> SetErrorSummary:
    """One report per consecutive pair; E_max is the largest, total area the sum."""
    xs = _as_points(bps)
    f.check_interval(Interval(xs[0], xs[-1]))
    x_star, err, area = interval_metrics(f, xs[:-1], xs[1:], cfg, assume_concave=assume_concave)
    reports = tuple(
        IntervalErrorReport(
            interval=Interval(xs[k], xs[k + 1]),
            argmax_x=float(x_star[k]),
            max_abs_error=float(err[k]),
            area_error=float(area[k]),
        )
        for k in range(xs.size - 1)
    )
    return SetErrorSummary(
        reports=reports,
        e_max=max(r.max_abs_error for r in reports),
        total_area=math.fsum(r.area_error for r in reports),
    )


def signed_profile(
    f: ScalarFunction, bps: Sequence[float], samples_per_piece: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Dense samples of the signed deviation f(x) - L(x) of the piecewise chord.
    Junctions appear once; every breakpoint is a sample.
    """
    if samples_per_piece < 2:
        raise DomainViolation(f"need at least 2 samples per piece, got {samples_per_piece}")
    xs = _as_points(bps)
    f.check_interval(Interval(xs[0], xs[-1]))
    fx = f.eval_array(xs)

    grid, errors = [], []
    for k in range(xs.size - 1):
        a, b = xs[k], xs[k + 1]
        t = np.linspace(a, b, samples_per_piece)
        slope = (fx[k + 1] - fx[k]) / (b - a)
        dev = f.eval_array(t) - (fx[k] + slope * (t - a))
        keep = slice(0, None) if k == 0 else slice(1, None)
        grid.append(t[keep])
        errors.append(dev[keep])
    return np.concatenate(grid), np.concatenate(errors)
