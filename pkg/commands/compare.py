import logging
from dataclasses import replace

import numpy as np
import pandas as pd

from baselines_oracle import GRID_BUDGET, greedy_insert, grid_oracle, uniform_baseline
from function_catalog import Interval, ScalarFunction
from interval_error import Criterion, evaluate_set
from sam_optimizer import SamConfig, optimize
from utils.output import to_csv_text, to_json_text, write_text
from utils.params import resolve_function, sam_config

logger = logging.getLogger(__name__)

COLUMNS = ["method", "criterion", "n", "e_max", "area_error", "sweeps", "converged"]


# ---------- Comparison table (uniform / greedy / SAM / oracle) ----------
def compare_table(
    f: ScalarFunction, rng: Interval, n: int, cfg: SamConfig, grid_points: int | None = None
) -> pd.DataFrame:
    """
    One row per strategy at the same range:
      uniform        equally spaced n points
      sam            SAM under each criterion
      greedy         insertion until SAM's achieved error is met (its point count is the result)
      oracle         exhaustive grid search, only for n in {3, 4}

    Returns DataFrame with:
      ['method','criterion','n','e_max','area_error','sweeps','converged']
    """
    rows = []
    base = uniform_baseline(f, rng, n, cfg.solver)
    rows.append(("uniform", "", n, base.summary.e_max, base.summary.total_area, None, None))

    for criterion in Criterion:
        res = optimize(f, rng, n, replace(cfg, criterion=criterion))
        rows.append(("sam", criterion.value, n, res.e_max, res.total_area, res.sweeps, res.converged))

        pts = greedy_insert(f, rng, res.summary.objective(criterion), criterion, cfg.solver)
        g = evaluate_set(f, pts, cfg.solver)
        rows.append(("greedy", criterion.value, len(pts), g.e_max, g.total_area, None, None))

        if n in GRID_BUDGET:
            oracle = grid_oracle(f, rng, n, criterion, grid_points or GRID_BUDGET[n], cfg.solver)
            o = evaluate_set(f, oracle.breakpoints, cfg.solver)
            rows.append(("oracle", criterion.value, n, o.e_max, o.total_area, None, None))

    df = pd.DataFrame(rows, columns=COLUMNS)
    df["sweeps"] = df["sweeps"].astype("Int64")
    df["converged"] = df["converged"].astype("boolean")
    return df


def _plain(v):
    if isinstance(v, str):
        return v
    if v is None or pd.isna(v):
        return None
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def app(function, lo, hi, n, criterion, tolerance, init, seed, max_sweeps, fmt, out, grid_points) -> int:
    # --criterion is ignored here: the table always covers both.
    f, rng = resolve_function(function, lo, hi)
    cfg = sam_config(criterion, tolerance, init, seed, max_sweeps)
    df = compare_table(f, rng, n, cfg, grid_points)

    if fmt == "json":
        records = [{k: _plain(v) for k, v in row.items()} for row in df.to_dict(orient="records")]
        text = to_json_text({"function": f.name, "range": {"lo": rng.lo, "hi": rng.hi}, "rows": records})
    else:
        text = to_csv_text(df)

    ok, msg = write_text(text, out)
    if not ok:
        logger.error(msg)
        return 1
    unconverged = df.loc[df["method"] == "sam", "converged"].eq(False).any()
    return 2 if unconverged else 0
