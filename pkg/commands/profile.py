import logging

from errors import DomainViolation, MaxSweepsExceeded
from export import emit_error_profile
from sam_optimizer import optimize
from utils.output import to_csv_text, to_json_text, write_text
from utils.params import resolve_function, sam_config

logger = logging.getLogger(__name__)


def app(function, lo, hi, n, criterion, tolerance, init, seed, max_sweeps, fmt, out, samples, at_sweep) -> int:
    # Signed error f(x) - L(x) of the final set, or of trace snapshot `at_sweep` (0 = initial set).
    f, rng = resolve_function(function, lo, hi)
    cfg = sam_config(criterion, tolerance, init, seed, max_sweeps)
    result = optimize(f, rng, n, cfg)

    if at_sweep is None:
        sweep_no, points = result.sweeps, result.breakpoints.points
    else:
        if not 0 <= at_sweep < len(result.trace):
            raise DomainViolation(f"--at-sweep {at_sweep} is outside the recorded sweeps 0..{len(result.trace) - 1}")
        sweep_no, points = at_sweep, result.trace[at_sweep].points

    df = emit_error_profile(f, points, samples)
    if fmt == "json":
        text = to_json_text({
            "function": result.function_name,
            "criterion": result.criterion.value,
            "sweep": sweep_no,
            "breakpoints": list(points),
            "profile": [{"x": float(x), "error": float(e)} for x, e in zip(df["x"], df["error"])],
        })
    else:
        text = to_csv_text(df)

    ok, msg = write_text(text, out)
    if not ok:
        logger.error(msg)
        return 1
    if not result.converged:
        logger.warning(str(MaxSweepsExceeded(result)))
        return 2
    return 0
