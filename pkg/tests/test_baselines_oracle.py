import math

import pytest

from baselines_oracle import greedy_insert, grid_oracle, uniform_baseline
from conftest import LN_RANGE, UNIT_RANGE, ln_interval_error
from errors import BudgetExceeded, DomainViolation, NoConvergence
from function_catalog import Interval, catalog_get
from interval_error import Criterion, evaluate_set
from sam_optimizer import SamConfig, optimize

LN_AREA_SPLIT = 9.9 / math.log(100.0)
SLOW = pytest.mark.slow


# ---------- uniform ----------
def test_uniform_baseline_on_ln(ln):
    base = uniform_baseline(ln, LN_RANGE, 5)
    assert base.breakpoints.points[0] == 0.1 and base.breakpoints.points[-1] == 10.0
    assert base.summary.e_max == pytest.approx(1.1620, abs=1e-3)


def test_uniform_baseline_edge_cases(ln):
    assert uniform_baseline(catalog_get("affine"), Interval(-2.0, 2.0), 7).summary.e_max == pytest.approx(0.0, abs=1e-12)
    two = uniform_baseline(ln, LN_RANGE, 2)
    assert two.breakpoints.points == (0.1, 10.0)
    assert two.summary.e_max == pytest.approx(ln_interval_error(0.1, 10.0), rel=1e-10)


# ---------- greedy insertion ----------
def test_greedy_first_split_of_ln_is_the_geometric_mean(ln):
    pts = greedy_insert(ln, LN_RANGE, 1.2)
    assert pts.points == pytest.approx((0.1, 1.0, 10.0))
    assert evaluate_set(ln, pts).e_max == pytest.approx(0.61905, abs=1e-4)


def test_greedy_stops_at_once_when_the_chord_is_good_enough(ln):
    pts = greedy_insert(ln, LN_RANGE, 2.2)
    assert pts.points == (0.1, 10.0)


@pytest.mark.parametrize(
    "name",
    ["ln", pytest.param("sqrt", marks=SLOW), pytest.param("neg_square", marks=SLOW), pytest.param("exp_convex", marks=SLOW)],
)
def test_greedy_never_beats_sam_at_equal_size(name):
    f = catalog_get(name)
    rng = f.typical
    threshold = 0.05 * evaluate_set(f, [rng.lo, rng.hi]).e_max
    pts = greedy_insert(f, rng, threshold)
    greedy_error = evaluate_set(f, pts).e_max
    assert greedy_error <= threshold
    # a 1e-8 movement stop leaves E_max ~1e-9 above the optimum at this size; 1e-11 leaves ~1e-12
    sam = optimize(f, rng, len(pts), SamConfig(criterion=Criterion.MINMAX_ABS, tolerance=1e-11, max_sweeps=1000))
    assert greedy_error >= sam.e_max - 1e-9


def test_greedy_area_uses_the_area_split(ln):
    pts = greedy_insert(ln, LN_RANGE, 1.0, Criterion.MIN_AREA)
    # the first split stays in the set whatever is inserted later
    assert any(abs(p - LN_AREA_SPLIT) < 1e-9 for p in pts.points)
    assert evaluate_set(ln, pts).total_area <= 1.0


def test_greedy_guards(ln):
    with pytest.raises(DomainViolation):
        greedy_insert(ln, LN_RANGE, 0.0)
    with pytest.raises(NoConvergence):
        greedy_insert(ln, LN_RANGE, 1e-6, max_insertions=3)


# ---------- grid oracle ----------
def test_oracle_finds_the_ln_splits(ln):
    best = grid_oracle(ln, LN_RANGE, 3, Criterion.MINMAX_ABS, 20_000)
    assert abs(best.breakpoints[1] - 1.0) <= best.grid_step
    best = grid_oracle(ln, LN_RANGE, 3, Criterion.MIN_AREA, 20_000)
    assert abs(best.breakpoints[1] - LN_AREA_SPLIT) <= best.grid_step


@pytest.mark.parametrize("criterion", list(Criterion))
def test_oracle_on_symmetric_neg_square(neg_square, criterion):
    best = grid_oracle(neg_square, UNIT_RANGE, 3, criterion, 2_001)
    assert best.breakpoints[1] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("name,rng", [("ln", LN_RANGE), ("neg_square", UNIT_RANGE)])
@pytest.mark.parametrize("criterion", list(Criterion))
@pytest.mark.parametrize("n,grid", [(3, 20_000), (4, 2_000)])
def test_sam_is_within_oracle_resolution(name, rng, criterion, n, grid):
    f = catalog_get(name)
    sam = optimize(f, rng, n, SamConfig(criterion=criterion))
    oracle = grid_oracle(f, rng, n, criterion, grid)
    assert sam.summary.objective(criterion) <= oracle.objective + oracle.resolution_bound + 1e-12
    # and the oracle cannot do much better than SAM
    assert oracle.objective >= sam.summary.objective(criterion) - 1e-9


def test_oracle_budget(ln):
    with pytest.raises(BudgetExceeded):
        grid_oracle(ln, LN_RANGE, 5, Criterion.MINMAX_ABS, 100)
    with pytest.raises(BudgetExceeded):
        grid_oracle(ln, LN_RANGE, 3, Criterion.MINMAX_ABS, 20_001)
    with pytest.raises(BudgetExceeded):
        grid_oracle(ln, LN_RANGE, 4, Criterion.MINMAX_ABS, 2_001)
