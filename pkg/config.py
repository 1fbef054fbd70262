import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# ---- Diagnostics ----
LOG_LEVELS = {"off": None, "info": logging.INFO, "debug": logging.DEBUG}
LOG_SETTING = os.getenv("BREAKLINE_LOG", "info").strip().lower()


def _env_float(key: str, default: str) -> float:
    raw = os.getenv(key, default)
    try:
        value = float(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not a number); using %s", key, raw, default)
        return float(default)
    if value <= 0:
        logger.warning("Ignoring %s=%r (must be > 0); using %s", key, raw, default)
        return float(default)
    return value


def _env_int(key: str, default: str) -> int:
    raw = os.getenv(key, default)
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer); using %s", key, raw, default)
        return int(default)
    if value < 1:
        logger.warning("Ignoring %s=%r (must be >= 1); using %s", key, raw, default)
        return int(default)
    return value


def _env_sizes(key: str, default: str) -> tuple[int, ...]:
    raw = os.getenv(key, default)
    try:
        sizes = tuple(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        sizes = ()
    if not sizes or min(sizes) < 2:
        logger.warning("Ignoring %s=%r; using %s", key, raw, default)
        return tuple(int(tok) for tok in default.split(","))
    return sizes


# ---- SAM defaults ----
DEFAULT_TOLERANCE = _env_float("BREAKLINE_TOLERANCE", "1e-8")
DEFAULT_MAX_SWEEPS = _env_int("BREAKLINE_MAX_SWEEPS", "10000")

# ---- Bench ----
# Gauss-Seidel needs on the order of N^2 sweeps, so bench gets a larger cap.
BENCH_MAX_SWEEPS = _env_int("BREAKLINE_BENCH_MAX_SWEEPS", "200000")
BENCH_SIZES = _env_sizes("BREAKLINE_BENCH_SIZES", "5,10,20,50,100")


def configure_logging(setting: str | None = None) -> None:
    """
    Route diagnostics to stderr at the level named by BREAKLINE_LOG.
    `off` silences everything; stdout stays reserved for results.
    """
    setting = (setting or os.getenv("BREAKLINE_LOG", LOG_SETTING)).strip().lower()
    if setting not in LOG_LEVELS:
        print(f"breakline: unknown BREAKLINE_LOG={setting!r}, using 'info'", file=sys.stderr)
        setting = "info"

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_breakline", False):
            root.removeHandler(handler)

    level = LOG_LEVELS[setting]
    if level is None:
        logging.disable(logging.CRITICAL)
        return

    logging.disable(logging.NOTSET)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    handler._breakline = True
    root.addHandler(handler)
    root.setLevel(level)
