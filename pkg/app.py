import sys

import click

import config
from commands import bench, compare, optimize, profile
from errors import BreaklineError, MaxSweepsExceeded
from utils.params import run_options

# --- Define all subcommands ---
COMMANDS = {
    "optimize": optimize,
    "profile": profile,
    "compare": compare,
    "bench": bench,
}


# --- Helper for the exit status line ---
def _alert(ok: bool, msg: str):
    click.echo(("" if ok else "Error: ") + msg, err=True)


class BreaklineCli(click.Group):
    """
    Exit codes: 0 converged, 2 did not converge within the sweep cap,
    1 anything else (bad input, numerical failure, usage errors).
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(
                args=args, prog_name=prog_name or "breakline", complete_var=complete_var,
                standalone_mode=False, **extra,
            )
        except click.ClickException as e:
            e.show()
            code = 1
        except click.Abort:
            _alert(False, "aborted")
            code = 1
        except MaxSweepsExceeded as e:
            _alert(False, str(e))
            code = 2
        except BreaklineError as e:
            _alert(False, str(e))
            code = 1
        code = 0 if code is None else int(code)
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=BreaklineCli)
def cli():
    """Optimal breakpoints for piecewise linear approximation of convex or concave functions."""
    config.configure_logging()


@cli.command("optimize")
@run_options("json")
def optimize_cmd(**opts):
    """Run SAM and emit the result document (json) or its trace (csv)."""
    return COMMANDS["optimize"].app(**opts)


@cli.command("profile")
@run_options("csv")
@click.option("--samples", type=click.IntRange(min=2), default=200, show_default=True, help="Samples per piece.")
@click.option("--at-sweep", type=click.IntRange(min=0), default=None, help="Trace snapshot to profile (0 = initial set).")
def profile_cmd(**opts):
    """Signed error f(x) - L(x) of the optimized (or a traced) breakpoint set."""
    return COMMANDS["profile"].app(**opts)


@cli.command("compare")
@run_options("csv")
@click.option("--grid-points", type=click.IntRange(min=1), default=None, help="Oracle grid size (n = 3 or 4 only).")
def compare_cmd(**opts):
    """Uniform, greedy insertion, SAM and (for small n) the grid oracle side by side."""
    return COMMANDS["compare"].app(**opts)


@cli.command("bench")
@run_options("csv")
@click.option("--sizes", default=",".join(map(str, config.BENCH_SIZES)), show_default=True,
              help="Comma separated breakpoint counts.")
def bench_cmd(sizes, **opts):
    """Wall-clock time and sweeps per breakpoint count."""
    try:
        n_values = [int(tok) for tok in sizes.split(",") if tok.strip()]
    except ValueError:
        raise click.BadParameter(f"expected integers, got {sizes!r}", param_hint="--sizes") from None
    if not n_values or min(n_values) < 2:
        raise click.BadParameter("every size must be >= 2", param_hint="--sizes")
    return COMMANDS["bench"].app(sizes=n_values, **opts)


def main() -> int:
    return cli.main(standalone_mode=False)


if __name__ == "__main__":
    sys.exit(main())
