"""
Single interior point subproblems on [a, b] with both endpoints fixed.

phi(a, b)   - the point that equalizes the max absolute errors of the two sub-chords,
              optimal for the minimal maximum absolute error criterion.
theta(a, b) - the point of largest gap between f and the chord of [a, b],
              optimal for the minimal area criterion.

Closed forms are used when the catalog entry carries them (ln); everything else
goes through bisection / golden section with the tolerances of SolverConfig.
"""

import logging
import math

import numpy as np

from errors import DomainViolation, NotStrictlyConcave
from function_catalog import Interval, ScalarFunction, concave_view
from interval_error import MIN_WIDTH, Chord, Criterion, chord_of, gap_argmax, uses_tangency
from numerics import DEFAULT_SOLVER, SolverConfig, bisect_decreasing, bisect_zero_edges, golden_section_max

__all__ = ["SolverConfig", "DEFAULT_SOLVER", "phi", "theta", "split_point"]

logger = logging.getLogger(__name__)

# Relative offset of phi's initial bracket from the endpoints.
BRACKET_EPS = 1e-9
# Gap values closer than this many ulps of f(c) count as equal.
PLATEAU_ULPS = 8
# Golden path: a smooth top is flat over about width * sqrt(ulps / peak); wider is a plateau.
PLATEAU_SLACK = 8.0


def _interval(g: ScalarFunction, a: float, b: float) -> Interval:
    iv = Interval(a, b)
    g.check_interval(iv)
    if iv.width < MIN_WIDTH:
        raise DomainViolation(f"[{a}, {b}] is narrower than {MIN_WIDTH}")
    return iv


def _peak_gap(g: ScalarFunction, lo: float, hi: float, cfg: SolverConfig, closed: bool) -> float:
    iv = Interval(lo, hi)
    chord = chord_of(g, iv)
    x = gap_argmax(g, iv, cfg, use_closed_form=closed)
    return float(g(x)) - chord(x)


def phi(
    f: ScalarFunction,
    a: float,
    b: float,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
    use_closed_form: bool = True,
) -> float:
    """
    Interior c with E([a, c]) == E([c, b]).

    Growing c grows the left error and shrinks the right one, so the imbalance
    E_left - E_right changes sign once and bisection on c finds it.
    """
    g = concave_view(f, assume_concave=assume_concave)
    iv = _interval(g, a, b)
    if use_closed_form and g.minimax_split is not None:
        return float(g.minimax_split(iv.lo, iv.hi))

    eps = BRACKET_EPS * iv.width

    def balance(c: float) -> float:
        # decreasing in c: right error minus left error
        right = _peak_gap(g, c, iv.hi, cfg, use_closed_form)
        left = _peak_gap(g, iv.lo, c, cfg, use_closed_form)
        return right - left

    return bisect_decreasing(balance, iv.lo + eps, iv.hi - eps, cfg.bisection_tol, cfg.max_inner_iter)


def theta(
    f: ScalarFunction,
    a: float,
    b: float,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
    use_closed_form: bool = True,
) -> float:
    """
    Unique maximizer of the gap g(x) = f(x) - L(a, b)(x), i.e. the tangency point
    f'(c) = chord slope. Needs strict concavity: a flat top raises NotStrictlyConcave.
    """
    g = concave_view(f, assume_concave=assume_concave)
    iv = _interval(g, a, b)
    if use_closed_form and g.area_split is not None:
        return float(g.area_split(iv.lo, iv.hi))

    chord = chord_of(g, iv)
    if uses_tangency(g, cfg):
        return _tangency_point(g, iv, chord, cfg)
    return _gap_peak(g, iv, chord, cfg)


def _flat(g: ScalarFunction, iv: Interval, left: float, right: float) -> NotStrictlyConcave:
    return NotStrictlyConcave(
        f"{g.name} is flat on [{left}, {right}] around its gap maximum on [{iv.lo}, {iv.hi}]; theta is not unique"
    )


def _peak(g: ScalarFunction, iv: Interval, chord: Chord, c: float) -> tuple[float, float]:
    """Gap at c and the rounding noise of a gap value there; a gap inside the noise means f is its chord."""
    top = float(g(c)) - chord(c)
    scale = max(abs(float(g(c))), abs(chord.intercept), abs(chord.slope * c))
    atol = PLATEAU_ULPS * float(np.spacing(scale))
    if top <= atol:
        raise _flat(g, iv, iv.lo, iv.hi)
    return top, atol


def _tangency_point(g: ScalarFunction, iv: Interval, chord: Chord, cfg: SolverConfig) -> float:
    # edges of {x : f'(x) == chord slope}; more than one resolution step apart is a plateau
    left, right = bisect_zero_edges(
        lambda x: float(g.slope_at(x)) - chord.slope, iv.lo, iv.hi, cfg.bisection_tol, cfg.max_inner_iter
    )
    c = 0.5 * (left + right)
    if right - left > cfg.bisection_tol + PLATEAU_ULPS * float(np.spacing(abs(c))):
        raise _flat(g, iv, left, right)
    _peak(g, iv, chord, c)
    return c


def _gap_peak(g: ScalarFunction, iv: Interval, chord: Chord, cfg: SolverConfig) -> float:
    def gap(x: float) -> float:
        return float(g(x)) - chord(x)

    c = golden_section_max(gap, iv.lo, iv.hi, cfg.bisection_tol, cfg.max_inner_iter)
    top, atol = _peak(g, iv, chord, c)

    # region where the gap is within atol of its peak
    floor = top - atol
    left = bisect_decreasing(lambda x: floor - gap(x), iv.lo, c, cfg.bisection_tol, cfg.max_inner_iter)
    right = bisect_decreasing(lambda x: gap(x) - floor, c, iv.hi, cfg.bisection_tol, cfg.max_inner_iter)
    smooth = PLATEAU_SLACK * iv.width * math.sqrt(atol / top)
    if right - left > max(cfg.bisection_tol, smooth):
        raise _flat(g, iv, left, right)
    return c


def split_point(
    criterion: Criterion,
    f: ScalarFunction,
    a: float,
    b: float,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    assume_concave: bool = False,
) -> float:
    if criterion is Criterion.MINMAX_ABS:
        return phi(f, a, b, cfg, assume_concave=assume_concave)
    return theta(f, a, b, cfg, assume_concave=assume_concave)
