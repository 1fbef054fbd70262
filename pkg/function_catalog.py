"""
Scalar functions the optimizer works on: the built-in catalog, user-supplied
functions and the convex/concave mirror.

Catalog evaluators are numpy ufunc expressions, so every ScalarFunction accepts
either a float or an ndarray.
"""

import logging
import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np

from errors import CurvatureUnknown, DomainViolation, UnknownFunction

logger = logging.getLogger(__name__)

RealFn = Callable[[float], float]


class Curvature(str, Enum):
    CONCAVE = "concave"
    STRICTLY_CONCAVE = "strictly_concave"
    CONVEX = "convex"
    STRICTLY_CONVEX = "strictly_convex"
    UNKNOWN = "unknown"

    @property
    def is_concave(self) -> bool:
        return self in (Curvature.CONCAVE, Curvature.STRICTLY_CONCAVE)

    @property
    def is_convex(self) -> bool:
        return self in (Curvature.CONVEX, Curvature.STRICTLY_CONVEX)

    @property
    def is_strict(self) -> bool:
        return self in (Curvature.STRICTLY_CONCAVE, Curvature.STRICTLY_CONVEX)

    def flipped(self) -> "Curvature":
        return _FLIP[self]


_FLIP = {
    Curvature.CONCAVE: Curvature.CONVEX,
    Curvature.STRICTLY_CONCAVE: Curvature.STRICTLY_CONVEX,
    Curvature.CONVEX: Curvature.CONCAVE,
    Curvature.STRICTLY_CONVEX: Curvature.STRICTLY_CONCAVE,
    Curvature.UNKNOWN: Curvature.UNKNOWN,
}


# ---------- intervals & domains ----------
@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainViolation(f"interval bounds must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise DomainViolation(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Domain:
    # Bounds may be infinite; each side is open unless flagged closed.
    lo: float = -math.inf
    hi: float = math.inf
    closed_lo: bool = False
    closed_hi: bool = False

    def admits(self, x: float) -> bool:
        above = x >= self.lo if self.closed_lo else x > self.lo
        below = x <= self.hi if self.closed_hi else x < self.hi
        return above and below

    def __str__(self) -> str:
        left = "[" if self.closed_lo else "("
        right = "]" if self.closed_hi else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


# ---------- the function abstraction ----------
def _central_difference(fn: RealFn) -> RealFn:
    def slope(x):
        h = np.maximum(1e-6, 1e-8 * np.abs(x))
        return (fn(x + h) - fn(x - h)) / (2.0 * h)

    return slope


@dataclass(frozen=True)
class ScalarFunction:
    name: str
    eval: RealFn
    domain: Domain
    curvature: Curvature = Curvature.UNKNOWN
    derivative: RealFn | None = None
    antiderivative: RealFn | None = None
    # Typical working range; CLI default for --lo/--hi and the sampling box in checks.
    typical: Interval | None = None
    # Closed forms for the three-point splits (array-safe), only set on catalog entries that have one.
    minimax_split: Callable[[float, float], float] | None = field(default=None, repr=False)
    area_split: Callable[[float, float], float] | None = field(default=None, repr=False)
    mirror_of: "ScalarFunction | None" = field(default=None, repr=False, compare=False)

    def __call__(self, x):
        return self.eval(x)

    def eval_array(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate over an array, falling back to a Python loop for scalar-only callables."""
        xs = np.asarray(xs, dtype=float)
        try:
            out = np.asarray(self.eval(xs), dtype=float)
            if out.shape == xs.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(self.eval(float(x))) for x in xs.ravel()]).reshape(xs.shape)

    def slope_at(self, x):
        """f'(x): the analytic derivative when known, otherwise a central difference."""
        if self.derivative is not None:
            return self.derivative(x)
        return _central_difference(self.eval)(x)

    def slope_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        try:
            out = np.asarray(self.slope_at(xs), dtype=float)
            if out.shape == xs.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(self.slope_at(float(x))) for x in xs.ravel()]).reshape(xs.shape)

    def check_interval(self, iv: Interval) -> None:
        if not (self.domain.admits(iv.lo) and self.domain.admits(iv.hi)):
            raise DomainViolation(f"[{iv.lo}, {iv.hi}] is not inside the domain {self.domain} of {self.name}")


def user_function(
    name: str,
    fn: RealFn,
    domain: Domain = Domain(),
    *,
    curvature: Curvature = Curvature.UNKNOWN,
    derivative: RealFn | None = None,
    antiderivative: RealFn | None = None,
    typical: Interval | None = None,
) -> ScalarFunction:
    """Wrap a caller's callable. Without a curvature tag, concavity-dependent ops need `assume_concave`."""
    return ScalarFunction(
        name=name,
        eval=fn,
        domain=domain,
        curvature=curvature,
        derivative=derivative,
        antiderivative=antiderivative,
        typical=typical,
    )


# ---------- mirror ----------
def mirror(f: ScalarFunction) -> ScalarFunction:
    """
    g(x) = -f(x). Curvature flips convex <-> concave with strictness kept;
    derivative and antiderivative are negated. The optimal breakpoints of f
    and g coincide, so closed-form splits carry over unchanged.
    """
    if f.curvature is Curvature.UNKNOWN:
        raise CurvatureUnknown(f"cannot mirror {f.name}: curvature is unknown")
    if f.mirror_of is not None:
        return f.mirror_of

    fe, fd, fa = f.eval, f.derivative, f.antiderivative
    return replace(
        f,
        name=f"mirror({f.name})",
        eval=lambda x: -fe(x),
        derivative=(lambda x: -fd(x)) if fd is not None else None,
        antiderivative=(lambda x: -fa(x)) if fa is not None else None,
        curvature=f.curvature.flipped(),
        mirror_of=f,
    )


def concave_view(f: ScalarFunction, *, assume_concave: bool = False) -> ScalarFunction:
    """
    The concave function the solvers work on: f itself, its mirror when f is
    convex, or f re-tagged when the caller vouches for an untagged function.
    """
    if f.curvature.is_concave:
        return f
    if f.curvature.is_convex:
        return mirror(f)
    if assume_concave:
        logger.debug("Treating %s as concave on the caller's word", f.name)
        return replace(f, curvature=Curvature.STRICTLY_CONCAVE)
    raise CurvatureUnknown(
        f"{f.name} has unknown curvature; pass assume_concave=True to optimize it anyway"
    )


# ---------- catalog ----------
def _ln() -> ScalarFunction:
    return ScalarFunction(
        name="ln",
        eval=np.log,
        derivative=lambda x: 1.0 / x,
        antiderivative=lambda x: x * np.log(x) - x,
        curvature=Curvature.STRICTLY_CONCAVE,
        domain=Domain(0.0, math.inf),
        typical=Interval(0.1, 10.0),
        minimax_split=lambda a, b: np.sqrt(a * b),
        area_split=lambda a, b: (b - a) / (np.log(b) - np.log(a)),
    )


def _sqrt() -> ScalarFunction:
    return ScalarFunction(
        name="sqrt",
        eval=np.sqrt,
        derivative=lambda x: 0.5 / np.sqrt(x),
        antiderivative=lambda x: (2.0 / 3.0) * x * np.sqrt(x),
        curvature=Curvature.STRICTLY_CONCAVE,
        domain=Domain(0.0, math.inf, closed_lo=True),
        typical=Interval(0.1, 10.0),
    )


def _neg_square() -> ScalarFunction:
    return ScalarFunction(
        name="neg_square",
        eval=lambda x: -(x * x),
        derivative=lambda x: -2.0 * x,
        antiderivative=lambda x: -(x * x * x) / 3.0,
        curvature=Curvature.STRICTLY_CONCAVE,
        domain=Domain(),
        typical=Interval(-1.0, 1.0),
    )


def _x_ln_x_neg() -> ScalarFunction:
    # f(x) = -x ln x, the entropy kernel
    return ScalarFunction(
        name="x_ln_x_neg",
        eval=lambda x: -x * np.log(x),
        derivative=lambda x: -np.log(x) - 1.0,
        antiderivative=lambda x: -(x * x) * (2.0 * np.log(x) - 1.0) / 4.0,
        curvature=Curvature.STRICTLY_CONCAVE,
        domain=Domain(0.0, math.inf),
        typical=Interval(0.05, 2.0),
    )


def _exp_convex() -> ScalarFunction:
    return ScalarFunction(
        name="exp_convex",
        eval=np.exp,
        derivative=np.exp,
        antiderivative=np.exp,
        curvature=Curvature.STRICTLY_CONVEX,
        domain=Domain(),
        typical=Interval(0.0, 3.0),
    )


def _affine() -> ScalarFunction:
    return ScalarFunction(
        name="affine",
        eval=lambda x: 2.0 * x + 1.0,
        derivative=lambda x: 2.0 + 0.0 * x,
        antiderivative=lambda x: x * x + x,
        curvature=Curvature.CONCAVE,
        domain=Domain(),
        typical=Interval(-1.0, 1.0),
    )


def _power(p: float) -> ScalarFunction:
    if not 0.0 < p < 1.0:
        raise UnknownFunction(f"power(p) needs 0 < p < 1, got {p}")
    return ScalarFunction(
        name=f"power({p!r})",
        eval=lambda x: np.power(x, p),
        derivative=lambda x: p * np.power(x, p - 1.0),
        antiderivative=lambda x: np.power(x, p + 1.0) / (p + 1.0),
        curvature=Curvature.STRICTLY_CONCAVE,
        domain=Domain(0.0, math.inf, closed_lo=True),
        typical=Interval(0.1, 10.0),
    )


CATALOG: dict[str, Callable[[], ScalarFunction]] = {
    "ln": _ln,
    "sqrt": _sqrt,
    "neg_square": _neg_square,
    "x_ln_x_neg": _x_ln_x_neg,
    "exp_convex": _exp_convex,
    "affine": _affine,
}

_POWER_RE = re.compile(r"^power\(\s*([0-9.eE+-]+)\s*\)$")


def catalog_names() -> list[str]:
    return sorted(CATALOG) + ["power(p)"]


def catalog_get(name: str) -> ScalarFunction:
    key = (name or "").strip()
    if key in CATALOG:
        return CATALOG[key]()
    match = _POWER_RE.match(key)
    if match:
        try:
            p = float(match.group(1))
        except ValueError:
            raise UnknownFunction(f"bad exponent in {name!r}") from None
        return _power(p)
    raise UnknownFunction(f"unknown function {name!r}; choose from {', '.join(catalog_names())}")
