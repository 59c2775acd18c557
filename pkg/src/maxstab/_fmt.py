"""Shared CSV and float formatting helpers.

All CSV output uses shortest round-trip decimal rendering (at most 17 significant
digits) so that files replay bit-exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


def fmt_value(v) -> str:
    """Render a cell: floats as shortest round-trip decimals, the rest via str."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt_value(v) for v in row])


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [row for row in reader]
