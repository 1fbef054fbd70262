"""
Artifacts built from a SAM result: the piecewise-linear function itself, the
self-describing JSON document and the tabular views (trace, error profile).
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import pandas as pd

from errors import DomainViolation, Unconverged
from function_catalog import ScalarFunction
from interval_error import Criterion, chord_of, signed_profile
from sam_optimizer import BreakpointSet, SamResult

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["x", "error"]
TRACE_COLUMNS = ["sweep", "e_max", "area_error", "max_movement"]


# ---------- piecewise linear function ----------
@dataclass(frozen=True)
class PwlPiece:
    lo: float
    hi: float
    slope: float
    intercept: float

    def __call__(self, x):
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PwlFunction:
    pieces: tuple[PwlPiece, ...]
    breakpoints: BreakpointSet
    function_name: str
    criterion: Criterion
    achieved_e_max: float
    achieved_area: float

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise DomainViolation("a PWL function needs one piece per pair of consecutive breakpoints")
        for k, piece in enumerate(self.pieces):
            if piece.lo != self.breakpoints[k] or piece.hi != self.breakpoints[k + 1]:
                raise DomainViolation(f"piece {k} does not span [{self.breakpoints[k]}, {self.breakpoints[k + 1]}]")

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        lo, hi = self.breakpoints.lo, self.breakpoints.hi
        if np.any(xs < lo) or np.any(xs > hi):
            raise DomainViolation(f"PWL function is defined on [{lo}, {hi}] only")
        interior = np.asarray(self.breakpoints.points[1:-1])
        idx = np.searchsorted(interior, xs, side="right")
        slopes = np.array([p.slope for p in self.pieces])
        intercepts = np.array([p.intercept for p in self.pieces])
        out = slopes[idx] * xs + intercepts[idx]
        return float(out) if out.ndim == 0 else out

    def max_junction_mismatch(self) -> float:
        gaps = [abs(left(left.hi) - right(left.hi)) for left, right in zip(self.pieces, self.pieces[1:])]
        return max(gaps, default=0.0)

    # ---- serialization ----
    def to_dict(self) -> dict[str, Any]:
        return {
            "function": self.function_name,
            "criterion": self.criterion.value,
            "breakpoints": list(self.breakpoints.points),
            "pieces": [
                {"lo": p.lo, "hi": p.hi, "slope": p.slope, "intercept": p.intercept} for p in self.pieces
            ],
            "e_max": self.achieved_e_max,
            "area_error": self.achieved_area,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "PwlFunction":
        return cls(
            pieces=tuple(
                PwlPiece(float(p["lo"]), float(p["hi"]), float(p["slope"]), float(p["intercept"]))
                for p in doc["pieces"]
            ),
            breakpoints=BreakpointSet(tuple(doc["breakpoints"])),
            function_name=doc["function"],
            criterion=Criterion(doc["criterion"]),
            achieved_e_max=float(doc["e_max"]),
            achieved_area=float(doc["area_error"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PwlFunction":
        return cls.from_dict(json.loads(text))


def _pieces(f: ScalarFunction, bps: BreakpointSet) -> tuple[PwlPiece, ...]:
    pieces = []
    for iv in bps.intervals():
        chord = chord_of(f, iv)
        pieces.append(PwlPiece(iv.lo, iv.hi, chord.slope, chord.intercept))
    return tuple(pieces)


def export_pwl(result: SamResult, f: ScalarFunction, *, allow_unconverged: bool = False) -> PwlFunction:
    """Chords of f between consecutive breakpoints, with the achieved metrics attached."""
    if not result.converged and not allow_unconverged:
        raise Unconverged(
            f"result for {result.function_name} did not converge after {result.sweeps} sweeps; "
            "pass allow_unconverged=True to export it anyway"
        )
    pwl = PwlFunction(
        pieces=_pieces(f, result.breakpoints),
        breakpoints=result.breakpoints,
        function_name=result.function_name,
        criterion=result.criterion,
        achieved_e_max=result.e_max,
        achieved_area=result.total_area,
    )
    logger.debug("Exported %d pieces, junction mismatch %.3e", len(pwl.pieces), pwl.max_junction_mismatch())
    return pwl


# ---------- tables ----------
def emit_error_profile(f: ScalarFunction, bps: Sequence[float], samples_per_piece: int = 200) -> pd.DataFrame:
    xs, errors = signed_profile(f, bps, samples_per_piece)
    return pd.DataFrame({"x": xs, "error": errors}, columns=PROFILE_COLUMNS)


def trace_frame(result: SamResult) -> pd.DataFrame:
    return result.trace.to_frame()[TRACE_COLUMNS]


def _num(v) -> float | None:
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def result_document(result: SamResult, pwl: PwlFunction) -> dict[str, Any]:
    """
    The JSON result, keys in this order:
    function, criterion, range, n, tolerance, converged, sweeps, breakpoints,
    pieces, e_max, area_error, trace.
    """
    bps = result.breakpoints
    return {
        "function": result.function_name,
        "criterion": result.criterion.value,
        "range": {"lo": bps.lo, "hi": bps.hi},
        "n": len(bps),
        "tolerance": float(result.tolerance),
        "converged": bool(result.converged),
        "sweeps": int(result.sweeps),
        "breakpoints": list(bps.points),
        "pieces": [{"lo": p.lo, "hi": p.hi, "slope": p.slope, "intercept": p.intercept} for p in pwl.pieces],
        "e_max": _num(result.e_max),
        "area_error": _num(result.total_area),
        "trace": [
            {
                "sweep": r.sweep,
                "e_max": _num(r.e_max),
                "area_error": _num(r.area_error),
                "max_movement": _num(r.max_movement),
            }
            for r in result.trace.records
        ],
    }
