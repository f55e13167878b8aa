"""
Plot-script emission for sweep CSV files.

The emitted script is standalone: it reads the CSV with the csv module and
draws with matplotlib (the `plots` extra). Nothing is rendered here.
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

from ..errors import SchemaError
from ..schemas import load_table_schemas, match_table
from .results import read_sweep_csv


logger = logging.getLogger(__name__)

_SCRIPT_TEMPLATE = '''#!/usr/bin/env python3
"""Plot {table} sweep from {csv_name}."""

import csv

import matplotlib.pyplot as plt

CSV_PATH = {csv_path!r}

with open(CSV_PATH, encoding="utf-8", newline="") as handle:
    rows = list(csv.DictReader(handle))


def column(name):
    return [float(row[name]) for row in rows]


x = column({x!r})
fig, ax = plt.subplots(figsize=(7, 4))
for name in {y!r}:
    ax.plot(x, column(name), marker=".", label=name)
{extras}ax.set_xlabel({x!r})
ax.legend(loc="best")
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig({image_path!r}, dpi=150)
print("wrote", {image_path!r})
'''

_ZERO_LINE = 'ax.axhline(0.0, color="black", linewidth=0.8)\n'
_BASELINE = 'ax.axhline(column({name!r})[0], color="gray", linestyle="--", label={name!r})\n'
_SECONDARY = (
    "twin = ax.twinx()\n"
    "for name in {names!r}:\n"
    '    twin.plot(x, column(name), linestyle=":", label=name)\n'
    'twin.legend(loc="lower right")\n'
)


def emit_plot_script(csv_path: Union[str, Path], output: Optional[Union[str, Path]] = None) -> str:
    """
    Build a matplotlib script for a sweep CSV.

    Args:
        csv_path: Sweep CSV produced by the harness
        output: Where to write the script; only returned when None

    Raises:
        SchemaError: If the CSV matches no plottable table layout
    """
    columns, _ = read_sweep_csv(csv_path)
    table, kind = match_table(columns)
    plot = load_table_schemas()[table].get("plot")
    if plot is None:
        raise SchemaError(f"table {table!r} has no plot layout")

    def fill(names: List[str]) -> List[str]:
        return [n.format(kind=kind) if "{kind}" in n else n for n in names]

    extras = ""
    if plot.get("zero_line"):
        extras += _ZERO_LINE
    if plot.get("baseline"):
        extras += _BASELINE.format(name=plot["baseline"])
    if plot.get("secondary"):
        extras += _SECONDARY.format(names=fill(plot["secondary"]))

    csv_path = Path(csv_path)
    script = _SCRIPT_TEMPLATE.format(
        table=table,
        csv_name=csv_path.name,
        csv_path=str(csv_path.resolve()),
        x=plot["x"],
        y=fill(plot["y"]),
        extras=extras,
        image_path=str(csv_path.with_suffix(".png").resolve()),
    )
    if output is not None:
        with open(output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(script)
        logger.info("Wrote %s plot script to %s", table, output)
    return script
