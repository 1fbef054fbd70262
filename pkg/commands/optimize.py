import logging

from errors import MaxSweepsExceeded
from export import export_pwl, result_document, trace_frame
from sam_optimizer import optimize
from utils.output import to_csv_text, to_json_text, write_text
from utils.params import resolve_function, sam_config

logger = logging.getLogger(__name__)


def app(function, lo, hi, n, criterion, tolerance, init, seed, max_sweeps, fmt, out) -> int:
    """
    Run SAM and write the result document (json) or the per-sweep trace (csv).
    Unconverged runs are still written; the exit code tells them apart.
    """
    f, rng = resolve_function(function, lo, hi)
    cfg = sam_config(criterion, tolerance, init, seed, max_sweeps)
    result = optimize(f, rng, n, cfg)

    if fmt == "json":
        pwl = export_pwl(result, f, allow_unconverged=True)
        text = to_json_text(result_document(result, pwl))
    else:
        text = to_csv_text(trace_frame(result))

    ok, msg = write_text(text, out)
    if not ok:
        logger.error(msg)
        return 1
    if not result.converged:
        logger.warning(str(MaxSweepsExceeded(result)))
        return 2
    return 0
