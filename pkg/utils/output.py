import json
import logging
from pathlib import Path

import click
import pandas as pd

logger = logging.getLogger(__name__)


# ------- Number formatting (shortest round-trip repr) ------------
def shortest(value) -> str:
    return repr(float(value))


def to_json_text(doc: dict) -> str:
    # json.dumps writes floats with repr, so parsing back gives the same doubles
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def to_csv_text(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n", float_format=shortest, na_rep="")


# ------- Destination (stdout or --out path) ------------
def write_text(text: str, out: str | None = None) -> tuple[bool, str]:
    if not out or out == "-":
        click.echo(text, nl=False)
        return True, "written to stdout"
    try:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as e:
        return False, f"Could not write {out}: {e}"
    logger.info("Wrote %d bytes to %s", len(text), out)
    return True, f"written to {out}"
