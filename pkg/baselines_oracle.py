"""
Comparators for the SAM result.

uniform_baseline - equally spaced breakpoints, just evaluated.
greedy_insert    - start from the endpoints and keep splitting the worst piece at
                   its criterion-optimal point until the error target is met.
                   Placement is greedy, so the count is generally not minimal.
grid_oracle      - exhaustive search over a uniform candidate grid for n in {3, 4};
                   independent of the sweep, used to certify it.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import BudgetExceeded, DomainViolation, NoConvergence
from function_catalog import Interval, ScalarFunction, concave_view
from interval_error import Criterion, SetErrorSummary, evaluate_set, interval_metrics
from sam_optimizer import BreakpointSet, InitSpec, init_breakpoints
from three_point_solvers import DEFAULT_SOLVER, SolverConfig, split_point

logger = logging.getLogger(__name__)

MAX_INSERTIONS = 10_000
# Largest candidate grid the oracle accepts, per breakpoint count.
GRID_BUDGET = {3: 20_000, 4: 2_000}
PAIR_CHUNK = 250_000


@dataclass(frozen=True)
class BaselineResult:
    breakpoints: BreakpointSet
    summary: SetErrorSummary


@dataclass(frozen=True)
class OracleResult:
    breakpoints: BreakpointSet
    objective: float
    grid_step: float
    # Largest objective change from moving one interior point by one grid step.
    resolution_bound: float


# ---------- uniform ----------
def uniform_baseline(
    f: ScalarFunction, rng: Interval, n: int, cfg: SolverConfig = DEFAULT_SOLVER
) -> BaselineResult:
    bps = init_breakpoints(rng, n, InitSpec.uniform())
    return BaselineResult(bps, evaluate_set(f, bps, cfg))


# ---------- greedy insertion ----------
def greedy_insert(
    f: ScalarFunction,
    rng: Interval,
    error_threshold: float,
    criterion: Criterion = Criterion.MINMAX_ABS,
    cfg: SolverConfig = DEFAULT_SOLVER,
    *,
    max_insertions: int = MAX_INSERTIONS,
) -> BreakpointSet:
    """
    "Current optimal position" is read as the criterion-optimal split of the
    worst piece: phi for the minimax criterion, theta for the area criterion.
    The stop test uses the global criterion (E_max, or total area).
    """
    if not error_threshold > 0:
        raise DomainViolation(f"error threshold must be > 0, got {error_threshold}")
    f.check_interval(rng)
    g = concave_view(f)

    points = [rng.lo, rng.hi]
    summary = evaluate_set(g, points, cfg)
    inserted = 0
    while summary.objective(criterion) > error_threshold:
        if inserted >= max_insertions:
            raise NoConvergence(
                f"greedy insertion stopped after {inserted} insertions at "
                f"{criterion.value} error {summary.objective(criterion):.6g}"
            )
        k = summary.worst_index(criterion)
        a, b = points[k], points[k + 1]
        points.insert(k + 1, split_point(criterion, g, a, b, cfg))
        inserted += 1
        summary = evaluate_set(g, points, cfg)

    logger.info("Greedy insertion: %d points, %s error %.6g", len(points), criterion.value, summary.objective(criterion))
    return BreakpointSet(tuple(points))


# ---------- grid oracle ----------
def _combine(criterion: Criterion, *parts: np.ndarray) -> np.ndarray:
    if criterion is Criterion.MINMAX_ABS:
        return np.maximum.reduce(parts)
    return sum(parts[1:], parts[0])


def _piece_values(
    g: ScalarFunction, lo: np.ndarray, hi: np.ndarray, criterion: Criterion, cfg: SolverConfig
) -> np.ndarray:
    _, err, area = interval_metrics(g, lo, hi, cfg, with_area=criterion is Criterion.MIN_AREA)
    return err if criterion is Criterion.MINMAX_ABS else area


def _objective(g: ScalarFunction, pts: list[float], criterion: Criterion, cfg: SolverConfig) -> float:
    return evaluate_set(g, pts, cfg).objective(criterion)


def grid_oracle(
    f: ScalarFunction,
    rng: Interval,
    n: int,
    criterion: Criterion = Criterion.MINMAX_ABS,
    grid_points: int = 2_000,
    cfg: SolverConfig = DEFAULT_SOLVER,
) -> OracleResult:
    """
    Best interior points drawn from the grid linspace(lo, hi, grid_points + 2)[1:-1].
    Ties go to the lexicographically smallest tuple.
    """
    if n not in GRID_BUDGET:
        raise BudgetExceeded(f"grid oracle supports n in {sorted(GRID_BUDGET)}, got {n}")
    if not 1 <= grid_points <= GRID_BUDGET[n]:
        raise BudgetExceeded(f"grid of {grid_points} points is outside the budget {GRID_BUDGET[n]} for n={n}")
    f.check_interval(rng)
    g = concave_view(f)

    nodes = np.linspace(rng.lo, rng.hi, grid_points + 2)
    nodes[0], nodes[-1] = rng.lo, rng.hi
    cand = nodes[1:-1]
    step = (rng.hi - rng.lo) / (grid_points + 1)
    lo_col = np.full(cand.size, rng.lo)
    hi_col = np.full(cand.size, rng.hi)

    left = _piece_values(g, lo_col, cand, criterion, cfg)
    right = _piece_values(g, cand, hi_col, criterion, cfg)

    if n == 3:
        score = _combine(criterion, left, right)
        k = int(np.argmin(score))
        best = [rng.lo, float(cand[k]), rng.hi]
        idx = [k]
    else:
        # row-major upper triangle, so the first minimum is the lexicographic smallest
        i, j = np.triu_indices(cand.size, k=1)
        best_score, k = math.inf, -1
        for start in range(0, i.size, PAIR_CHUNK):
            ci, cj = i[start:start + PAIR_CHUNK], j[start:start + PAIR_CHUNK]
            middle = _piece_values(g, cand[ci], cand[cj], criterion, cfg)
            score = _combine(criterion, left[ci], middle, right[cj])
            m = int(np.argmin(score))
            if score[m] < best_score:
                best_score, k = float(score[m]), start + m
        best = [rng.lo, float(cand[i[k]]), float(cand[j[k]]), rng.hi]
        idx = [int(i[k]), int(j[k])]

    objective = _objective(g, best, criterion, cfg)
    bound = _resolution_bound(g, nodes, idx, objective, criterion, cfg)
    logger.info("Grid oracle n=%d (%d candidates): %s objective %.10g", n, grid_points, criterion.value, objective)
    return OracleResult(BreakpointSet(tuple(best)), objective, step, bound)


def _resolution_bound(g, nodes, idx, objective, criterion, cfg) -> float:
    bound = 0.0
    for pos in range(len(idx)):
        for shift in (-1, 1):
            moved = list(idx)
            moved[pos] += shift
            interior = [nodes[m + 1] for m in moved]
            pts = [nodes[0], *interior, nodes[-1]]
            if any(b <= a for a, b in zip(pts, pts[1:])):
                continue
            bound = max(bound, abs(_objective(g, pts, criterion, cfg) - objective))
    return bound if math.isfinite(bound) else 0.0
