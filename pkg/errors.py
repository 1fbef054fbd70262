# Exception hierarchy shared by the library modules and the CLI boundary.


class BreaklineError(Exception):
    """Base class; the CLI maps anything deriving from it to exit code 1."""


# ---------- function catalog ----------
class UnknownFunction(BreaklineError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown function"


class CurvatureUnknown(BreaklineError):
    pass


# ---------- interval / solver errors ----------
class DomainViolation(BreaklineError, ValueError):
    pass


class NonConcaveDetected(BreaklineError):
    pass


class NotStrictlyConcave(BreaklineError):
    pass


class NoConvergence(BreaklineError):
    """Iteration cap hit. `bracket` holds the best (lo, hi) bracket when one exists."""

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.bracket = bracket


# ---------- breakpoint sets / sweeps ----------
class InvalidCount(BreaklineError, ValueError):
    pass


class InvalidExplicit(BreaklineError, ValueError):
    pass


class NumericalCollapse(BreaklineError):
    pass


class SweepAborted(BreaklineError):
    def __init__(self, index: int, cause: BreaklineError):
        super().__init__(f"sweep aborted at breakpoint index {index}: {cause}")
        self.index = index
        self.cause = cause


class MaxSweepsExceeded(BreaklineError):
    # Soft failure: the best-so-far result (trace included) rides along.
    def __init__(self, result):
        super().__init__(
            f"no convergence after {result.sweeps} sweeps "
            f"(last movement {result.last_movement:.3e})"
        )
        self.result = result


# ---------- baselines / export ----------
class BudgetExceeded(BreaklineError):
    pass


class Unconverged(BreaklineError):
    pass
