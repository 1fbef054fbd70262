"""
Sequential adjusting sweeps for breakpoint placement.

One sweep replaces every interior breakpoint x_i, in ascending order, by the
three-point optimum of its current neighbours: phi(x_{i-1}, x_{i+1}) for the
minimax criterion, theta(x_{i-1}, x_{i+1}) for the area criterion. The left
neighbour used is the one already updated in this sweep. Sweeps repeat until no
point moves by more than the tolerance.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

import numpy as np
import pandas as pd

import config
from errors import (
    BreaklineError,
    InvalidCount,
    InvalidExplicit,
    MaxSweepsExceeded,
    NumericalCollapse,
    SweepAborted,
)
from function_catalog import Interval, ScalarFunction, concave_view
from interval_error import Criterion, SetErrorSummary, evaluate_set, interval_metrics
from three_point_solvers import DEFAULT_SOLVER, SolverConfig, split_point

logger = logging.getLogger(__name__)


# ---------- breakpoint sets ----------
@dataclass(frozen=True)
class BreakpointSet:
    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(x) for x in self.points)
        if len(pts) < 2:
            raise InvalidCount(f"a breakpoint set needs at least 2 points, got {len(pts)}")
        if not all(math.isfinite(x) for x in pts):
            raise InvalidExplicit("breakpoints must be finite")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InvalidExplicit("breakpoints must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[float]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def lo(self) -> float:
        return self.points[0]

    @property
    def hi(self) -> float:
        return self.points[-1]

    @property
    def range(self) -> Interval:
        return Interval(self.lo, self.hi)

    def intervals(self) -> list[Interval]:
        return [Interval(a, b) for a, b in zip(self.points, self.points[1:])]

    def max_movement(self, other: "BreakpointSet") -> float:
        if len(other) != len(self):
            raise InvalidCount("cannot compare breakpoint sets of different sizes")
        return max((abs(a - b) for a, b in zip(self.points, other.points)), default=0.0)


# ---------- configuration ----------
class InitMode(str, Enum):
    UNIFORM = "uniform"
    RANDOM = "random"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class InitSpec:
    mode: InitMode = InitMode.UNIFORM
    seed: int | None = None
    points: tuple[float, ...] | None = None

    @classmethod
    def uniform(cls) -> "InitSpec":
        return cls(InitMode.UNIFORM)

    @classmethod
    def random(cls, seed: int) -> "InitSpec":
        return cls(InitMode.RANDOM, seed=int(seed))

    @classmethod
    def explicit(cls, points: Sequence[float]) -> "InitSpec":
        return cls(InitMode.EXPLICIT, points=tuple(float(x) for x in points))


@dataclass(frozen=True)
class SamConfig:
    criterion: Criterion = Criterion.MINMAX_ABS
    tolerance: float = config.DEFAULT_TOLERANCE
    max_sweeps: int = config.DEFAULT_MAX_SWEEPS
    init: InitSpec = field(default_factory=InitSpec.uniform)
    solver: SolverConfig = DEFAULT_SOLVER
    # Lets untagged user functions through; the optimality guarantees then do not apply.
    assume_concave: bool = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")


# ---------- trace & result ----------
@dataclass(frozen=True)
class SweepRecord:
    sweep: int
    points: tuple[float, ...]
    e_max: float
    area_error: float
    max_movement: float | None  # None for the initial snapshot


@dataclass
class SamTrace:
    records: list[SweepRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, sweep: int) -> SweepRecord:
        return self.records[sweep]

    @property
    def e_max_series(self) -> list[float]:
        return [r.e_max for r in self.records]

    @property
    def area_series(self) -> list[float]:
        return [r.area_error for r in self.records]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "sweep": [r.sweep for r in self.records],
                "e_max": [r.e_max for r in self.records],
                "area_error": [r.area_error for r in self.records],
                "max_movement": [r.max_movement for r in self.records],
            }
        )


@dataclass(frozen=True)
class SamResult:
    function_name: str
    criterion: Criterion
    tolerance: float
    breakpoints: BreakpointSet
    trace: SamTrace
    converged: bool
    sweeps: int
    summary: SetErrorSummary

    @property
    def reports(self):
        return self.summary.reports

    @property
    def e_max(self) -> float:
        return self.summary.e_max

    @property
    def total_area(self) -> float:
        return self.summary.total_area

    @property
    def last_movement(self) -> float:
        last = self.trace.records[-1].max_movement if self.trace.records else None
        return 0.0 if last is None else last

    def raise_for_convergence(self) -> "SamResult":
        if not self.converged:
            raise MaxSweepsExceeded(self)
        return self


# ---------- operations ----------
def init_breakpoints(rng: Interval, n: int, init: InitSpec = InitSpec.uniform()) -> BreakpointSet:
    if n < 2:
        raise InvalidCount(f"need n >= 2 breakpoints, got {n}")

    if init.mode is InitMode.UNIFORM:
        pts = np.linspace(rng.lo, rng.hi, n)
        pts[0], pts[-1] = rng.lo, rng.hi
        return BreakpointSet(tuple(pts))

    if init.mode is InitMode.RANDOM:
        gen = np.random.default_rng(init.seed)
        interior = np.sort(gen.uniform(rng.lo, rng.hi, n - 2))
        interior = interior[(interior > rng.lo) & (interior < rng.hi)]
        if interior.size != n - 2:
            raise InvalidExplicit(f"seed {init.seed} drew an endpoint; pick another seed")
        return BreakpointSet((rng.lo, *interior, rng.hi))

    pts = init.points or ()
    if len(pts) != n:
        raise InvalidExplicit(f"explicit set has {len(pts)} points, expected {n}")
    if pts[0] != rng.lo or pts[-1] != rng.hi:
        raise InvalidExplicit(f"explicit set must start at {rng.lo} and end at {rng.hi}")
    return BreakpointSet(pts)


def sweep(f: ScalarFunction, bps: BreakpointSet, cfg: SamConfig) -> tuple[BreakpointSet, float]:
    """One Gauss-Seidel pass; returns the new set and the largest point movement."""
    g = concave_view(f, assume_concave=cfg.assume_concave)
    pts = list(bps.points)
    guard = cfg.solver.bisection_tol
    movement = 0.0
    for i in range(1, len(pts) - 1):
        left, right = pts[i - 1], pts[i + 1]
        try:
            x = split_point(cfg.criterion, g, left, right, cfg.solver)
        except BreaklineError as exc:
            raise SweepAborted(i, exc) from exc
        if not left + guard < x < right - guard:
            raise NumericalCollapse(
                f"breakpoint {i} landed at {x!r}, too close to its neighbours ({left!r}, {right!r})"
            )
        movement = max(movement, abs(x - pts[i]))
        pts[i] = x
    return BreakpointSet(tuple(pts)), movement


def _record(g: ScalarFunction, bps: BreakpointSet, sweep_no: int, movement, cfg: SamConfig) -> SweepRecord:
    # Aggregates only; the per-interval reports are built once, for the final set.
    xs = np.asarray(bps.points)
    _, err, area = interval_metrics(g, xs[:-1], xs[1:], cfg.solver)
    return SweepRecord(
        sweep=sweep_no,
        points=bps.points,
        e_max=float(err.max()),
        area_error=math.fsum(area.tolist()),
        max_movement=movement,
    )


def optimize(f: ScalarFunction, rng: Interval, n: int, cfg: SamConfig = SamConfig()) -> SamResult:
    """
    Sweep until the largest movement is within cfg.tolerance or cfg.max_sweeps
    is spent. Running out of sweeps is not an exception here: the result comes
    back with converged=False (see SamResult.raise_for_convergence).
    """
    f.check_interval(rng)
    g = concave_view(f, assume_concave=cfg.assume_concave)
    bps = init_breakpoints(rng, n, cfg.init)
    logger.info(
        "SAM %s on %s over [%s, %s], n=%d, tol=%g", cfg.criterion.value, f.name, rng.lo, rng.hi, n, cfg.tolerance
    )

    trace = SamTrace()
    trace.records.append(_record(g, bps, 0, None, cfg))

    converged = n == 2  # nothing to move
    sweeps = 0
    movement = 0.0
    while not converged and sweeps < cfg.max_sweeps:
        bps, movement = sweep(g, bps, cfg)
        sweeps += 1
        rec = _record(g, bps, sweeps, movement, cfg)
        trace.records.append(rec)
        logger.debug("sweep %d: e_max=%.12g area=%.12g move=%.3e", sweeps, rec.e_max, rec.area_error, movement)
        converged = movement <= cfg.tolerance

    summary = evaluate_set(g, bps, cfg.solver)
    if converged:
        logger.info("Converged after %d sweeps: e_max=%.10g area=%.10g", sweeps, summary.e_max, summary.total_area)
    else:
        logger.warning("Stopped after %d sweeps without converging (last movement %.3e)", sweeps, movement)
    return SamResult(f.name, cfg.criterion, cfg.tolerance, bps, trace, converged, sweeps, summary)
