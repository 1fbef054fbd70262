import logging
import time
from dataclasses import replace
from typing import Sequence

import pandas as pd

import config
from function_catalog import Interval, ScalarFunction
from interval_error import Criterion
from sam_optimizer import SamConfig, optimize
from utils.output import to_csv_text, to_json_text, write_text
from utils.params import resolve_function, sam_config

logger = logging.getLogger(__name__)

COLUMNS = ["n", "wall_time_seconds", "sweeps", "final_error", "converged"]


def bench(
    n_values: Sequence[int],
    f: ScalarFunction,
    rng: Interval,
    criterion: Criterion = Criterion.MINMAX_ABS,
    cfg: SamConfig | None = None,
) -> pd.DataFrame:
    """Time one optimize run per N, sequentially. Timings are wall clock and machine dependent."""
    cfg = replace(cfg or SamConfig(max_sweeps=config.BENCH_MAX_SWEEPS), criterion=criterion)
    rows = []
    for n in n_values:
        start = time.perf_counter()
        res = optimize(f, rng, n, cfg)
        elapsed = time.perf_counter() - start
        rows.append((n, elapsed, res.sweeps, res.summary.objective(criterion), res.converged))
        logger.info("bench n=%d: %.4fs, %d sweeps", n, elapsed, res.sweeps)
    return pd.DataFrame(rows, columns=COLUMNS)


def app(function, lo, hi, n, criterion, tolerance, init, seed, max_sweeps, fmt, out, sizes) -> int:
    # --n is ignored; the sizes list drives the runs.
    f, rng = resolve_function(function, lo, hi)
    cfg = sam_config(criterion, tolerance, init, seed, max_sweeps, default_max_sweeps=config.BENCH_MAX_SWEEPS)
    df = bench(sizes, f, rng, cfg.criterion, cfg)

    if fmt == "json":
        rows = [
            {
                "n": int(r.n),
                "wall_time_seconds": float(r.wall_time_seconds),
                "sweeps": int(r.sweeps),
                "final_error": float(r.final_error),
                "converged": bool(r.converged),
            }
            for r in df.itertuples(index=False)
        ]
        text = to_json_text({"function": f.name, "criterion": cfg.criterion.value, "rows": rows})
    else:
        text = to_csv_text(df)

    ok, msg = write_text(text, out)
    if not ok:
        logger.error(msg)
        return 1
    return 0 if df["converged"].all() else 2
