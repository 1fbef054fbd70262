import click

import config
from function_catalog import Interval, ScalarFunction, catalog_get
from interval_error import Criterion
from sam_optimizer import InitSpec, SamConfig


# ------- Shared CLI options ------------
def run_options(default_format: str):
    """Options every subcommand shares; `--format` default differs per command."""

    def decorate(fn):
        options = [
            click.option("--function", "function", default="ln", show_default=True,
                         help="Catalog name, e.g. ln, sqrt, neg_square, x_ln_x_neg, exp_convex, power(0.3)."),
            click.option("--lo", type=float, default=None, help="Range start (default: the function's typical range)."),
            click.option("--hi", type=float, default=None, help="Range end (default: the function's typical range)."),
            click.option("--n", "n", type=int, default=5, show_default=True, help="Number of breakpoints, endpoints included."),
            click.option("--criterion", type=click.Choice([c.value for c in Criterion]), default="minmax", show_default=True),
            click.option("--tolerance", type=float, default=config.DEFAULT_TOLERANCE, show_default=True),
            click.option("--init", "init", type=click.Choice(["uniform", "random"]), default="uniform", show_default=True),
            click.option("--seed", type=int, default=0, show_default=True, help="Seed for --init random."),
            click.option("--max-sweeps", type=int, default=None, help="Sweep cap (default from BREAKLINE_MAX_SWEEPS)."),
            click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=default_format, show_default=True),
            click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default: stdout)."),
        ]
        for option in reversed(options):
            fn = option(fn)
        return fn

    return decorate


# ------- Option -> domain objects ------------
def resolve_function(function: str, lo: float | None, hi: float | None) -> tuple[ScalarFunction, Interval]:
    f = catalog_get(function)
    if (lo is None or hi is None) and f.typical is None:
        raise click.UsageError(f"{f.name} has no typical range; pass --lo and --hi")
    rng = Interval(
        f.typical.lo if lo is None else lo,
        f.typical.hi if hi is None else hi,
    )
    f.check_interval(rng)
    return f, rng


def sam_config(
    criterion: str,
    tolerance: float,
    init: str,
    seed: int,
    max_sweeps: int | None,
    default_max_sweeps: int = config.DEFAULT_MAX_SWEEPS,
) -> SamConfig:
    if not tolerance > 0:
        raise click.BadParameter(f"must be > 0, got {tolerance}", param_hint="--tolerance")
    sweeps = default_max_sweeps if max_sweeps is None else max_sweeps
    if sweeps < 1:
        raise click.BadParameter(f"must be >= 1, got {sweeps}", param_hint="--max-sweeps")
    return SamConfig(
        criterion=Criterion(criterion),
        tolerance=tolerance,
        max_sweeps=sweeps,
        init=InitSpec.random(seed) if init == "random" else InitSpec.uniform(),
    )
