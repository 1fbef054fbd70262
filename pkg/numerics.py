"""
Scalar search and quadrature primitives.

Each search comes in two flavours: a plain-float version used inside the
three-point solvers (cheap per call) and a numpy version that runs the same
iteration elementwise over arrays of brackets (used for whole breakpoint sets
and the grid oracle).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from errors import NoConvergence

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


# ---------- bisection ----------
def bisect_decreasing(
    g: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int
) -> float:
    """
    Root of a non-increasing g on [lo, hi] by bisection down to width `tol`.
    If g does not change sign the nearer endpoint is returned.
    """
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket at float resolution
            break
        gm = g(mid)
        if gm > 0:
            lo = mid
        elif gm < 0:
            hi = mid
        else:
            return mid
        it += 1
        if it >= max_iter and hi - lo > tol:
            raise NoConvergence(f"bisection did not reach width {tol} in {max_iter} steps", (lo, hi))
    return 0.5 * (lo + hi)


def bisect_zero_edges(
    g: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int
) -> tuple[float, float]:
    """
    Both ends of the zero set of a non-increasing g on [lo, hi]: the last point
    where g > 0 and the first where g < 0, each to width `tol`. A single root
    gives two values within `tol` of each other.
    """

    def edge(positive: Callable[[float], bool]) -> float:
        a, b = lo, hi
        for _ in range(max_iter):
            if b - a <= tol:
                return 0.5 * (a + b)
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                return mid
            if positive(g(mid)):
                a = mid
            else:
                b = mid
        if b - a > tol:
            raise NoConvergence(f"bisection did not reach width {tol} in {max_iter} steps", (a, b))
        return 0.5 * (a + b)

    return edge(lambda v: v > 0), edge(lambda v: v >= 0)


def _steps_needed(width: float, tol: float, shrink: float) -> int:
    if width <= tol:
        return 0
    return int(math.ceil(math.log(tol / width) / math.log(shrink)))


def _widest(lo: np.ndarray, hi: np.ndarray) -> tuple[float, float]:
    k = int(np.argmax(hi - lo))
    return float(lo.flat[k]), float(hi.flat[k])


def bisect_decreasing_array(
    g: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray, tol: float, max_iter: int
) -> np.ndarray:
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    if lo.size == 0:
        return lo
    steps = _steps_needed(float(np.max(hi - lo)), tol, 0.5)
    if steps > max_iter:
        raise NoConvergence(f"bisection needs {steps} steps, cap is {max_iter}", _widest(lo, hi))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        lo = np.where(gm > 0, mid, lo)
        hi = np.where(gm < 0, mid, hi)
        exact = gm == 0
        if exact.any():
            lo = np.where(exact, mid, lo)
            hi = np.where(exact, mid, hi)
    return 0.5 * (lo + hi)


# ---------- golden section ----------
def golden_section_max(
    g: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int
) -> float:
    """Maximizer of a unimodal g on [lo, hi]; bracket shrunk to width `tol`."""
    h = hi - lo
    steps = _steps_needed(h, tol, INV_PHI)
    if steps > max_iter:
        raise NoConvergence(f"golden section needs {steps} steps, cap is {max_iter}", (lo, hi))
    if steps == 0:
        return 0.5 * (lo + hi)

    c = lo + INV_PHI_SQUARE * h
    d = lo + INV_PHI * h
    yc = g(c)
    yd = g(d)
    for _ in range(steps - 1):
        if yc > yd:
            hi = d
            d, yd = c, yc
            h = INV_PHI * h
            c = lo + INV_PHI_SQUARE * h
            yc = g(c)
        else:
            lo = c
            c, yc = d, yd
            h = INV_PHI * h
            d = lo + INV_PHI * h
            yd = g(d)
    return 0.5 * (lo + d) if yc > yd else 0.5 * (c + hi)


def golden_section_max_array(
    g: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray, tol: float, max_iter: int
) -> np.ndarray:
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    if lo.size == 0:
        return lo
    h = hi - lo
    steps = _steps_needed(float(np.max(h)), tol, INV_PHI)
    if steps > max_iter:
        raise NoConvergence(f"golden section needs {steps} steps, cap is {max_iter}", _widest(lo, hi))
    if steps == 0:
        return 0.5 * (lo + hi)

    c = lo + INV_PHI_SQUARE * h
    d = lo + INV_PHI * h
    yc = g(c)
    yd = g(d)
    for _ in range(steps - 1):
        left = yc > yd
        h = INV_PHI * h
        new_lo = np.where(left, lo, c)
        new_hi = np.where(left, d, hi)
        new_c = np.where(left, new_lo + INV_PHI_SQUARE * h, d)
        new_d = np.where(left, c, new_lo + INV_PHI * h)
        # one fresh evaluation per element: c on the left branch, d on the right
        fresh = g(np.where(left, new_c, new_d))
        yc, yd = np.where(left, fresh, yd), np.where(left, yc, fresh)
        lo, hi, c, d = new_lo, new_hi, new_c, new_d
    return np.where(yc > yd, 0.5 * (lo + d), 0.5 * (c + hi))


# ---------- quadrature ----------
def adaptive_simpson(
    g: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_depth: int = 50
) -> float:
    """Adaptive Simpson with Richardson correction; recursion capped at `max_depth`."""
    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(g, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(g, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = g(lm), g(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (
        _simpson_step(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + _simpson_step(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    )


# ---------- settings shared by every search ----------
GAP_SEARCHES = ("auto", "tangency", "golden")


@dataclass(frozen=True)
class SolverConfig:
    bisection_tol: float = 1e-12
    max_inner_iter: int = 200
    # auto: tangency bisection when an analytic derivative exists, golden section otherwise
    gap_search: str = "auto"

    def __post_init__(self):
        if not self.bisection_tol > 0:
            raise ValueError(f"bisection_tol must be > 0, got {self.bisection_tol}")
        if self.max_inner_iter < 1:
            raise ValueError(f"max_inner_iter must be >= 1, got {self.max_inner_iter}")
        if self.gap_search not in GAP_SEARCHES:
            raise ValueError(f"gap_search must be one of {GAP_SEARCHES}, got {self.gap_search!r}")


DEFAULT_SOLVER = SolverConfig()
