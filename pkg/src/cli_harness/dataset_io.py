"""
Dataset CSV reading and writing.

Format: UTF-8, comma separated, LF line endings, no quoting, optional header
line. Column 1 is the integer class label, the remaining columns are the
decimal feature values.
"""

import logging
import math
from pathlib import Path
from typing import List, Union

import numpy as np

from ..errors import DatasetFormatError
from ..synth_data.dataset import LabeledDataset


logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _parse_label(text: str, line_number: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise DatasetFormatError(f"label {text!r} is not an integer", line_number) from None


def _parse_feature(text: str, line_number: int, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DatasetFormatError(f"column {column}: {text!r} is not a number", line_number) from None
    if not math.isfinite(value):
        raise DatasetFormatError(f"column {column}: non-finite value {text!r}", line_number)
    return value


def read_dataset_csv(path: PathLike, header: bool = False) -> LabeledDataset:
    """
    Parse a dataset CSV file.

    Args:
        path: File to read
        header: Skip the first line

    Raises:
        DatasetFormatError: On the first malformed line, with its 1-based line number
    """
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            text = handle.read()
    except UnicodeDecodeError as e:
        raise DatasetFormatError(f"{path}: not valid UTF-8 ({e.reason})") from None
    except OSError as e:
        raise DatasetFormatError(f"{path}: {e.strerror or e}") from None

    lines = text.split("\n")
    # A final newline leaves one empty trailing element
    if lines and lines[-1] == "":
        lines.pop()

    labels: List[int] = []
    rows: List[List[float]] = []
    width = None
    first = 1 if header else 0
    if header and not lines:
        raise DatasetFormatError("missing header line", 1)

    for index in range(first, len(lines)):
        line_number = index + 1
        line = lines[index]
        if line.endswith("\r"):
            raise DatasetFormatError("CR line ending; expected LF", line_number)
        if not line.strip():
            raise DatasetFormatError("empty line", line_number)
        fields = line.split(",")
        if len(fields) < 2:
            raise DatasetFormatError("expected a label and at least one feature", line_number)
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DatasetFormatError(f"expected {width} columns, got {len(fields)}", line_number)
        labels.append(_parse_label(fields[0].strip(), line_number))
        rows.append([_parse_feature(f.strip(), line_number, c + 2) for c, f in enumerate(fields[1:])])

    if not rows:
        raise DatasetFormatError(f"{path}: no data rows")

    logger.info("Read %d rows x %d features from %s", len(rows), width - 1, path)
    return LabeledDataset(np.array(rows, dtype=np.float64), np.array(labels, dtype=np.int64))


def write_dataset_csv(data: LabeledDataset, path: PathLike, header: bool = False) -> None:
    """Write `data` in the dataset CSV format; feature values round-trip exactly."""
    out: List[str] = []
    if header:
        out.append(",".join(["label"] + [f"f{i + 1}" for i in range(data.n_dims)]))
    for label, row in zip(data.labels, data.features):
        out.append(",".join([str(int(label))] + [repr(float(v)) for v in row]))
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(out) + "\n")
    logger.info("Wrote %d rows to %s", data.n_samples, path)
