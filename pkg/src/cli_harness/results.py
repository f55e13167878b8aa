"""
Sweep result tables and their CSV form.
"""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple, Union

import numpy as np
import yaml

from ..errors import DomainError, SchemaError


def format_value(value: Any, digits: int = 9) -> str:
    """Integers as-is, reals with `digits` significant digits, anything else via str."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        # Adding 0.0 turns -0.0 into 0.0
        return f"{value + 0.0:.{digits}g}"
    return str(value)


@dataclass
class SweepResult:
    """
    One row per grid point.

    Attributes:
        table: Table layout name (theory, mc, synth, real, existence)
        columns: Column names in output order
        rows: Row values aligned with columns
        metadata: Run parameters and summaries, not part of the CSV
    """

    table: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, **values: Any) -> None:
        missing = [c for c in self.columns if c not in values]
        if missing:
            raise DomainError(f"row is missing column(s): {', '.join(missing)}")
        self.rows.append([values[c] for c in self.columns])

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise SchemaError(f"no column {name!r}", column=name)
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)

    def to_csv(self, target: Optional[Union[str, Path, TextIO]] = None, digits: int = 9) -> str:
        """
        Render the table as CSV (header always present, LF line endings).

        Args:
            target: Path or text stream to write to; only rendered when None
            digits: Significant digits for reals
        """
        lines = [",".join(self.columns)]
        lines.extend(",".join(format_value(v, digits) for v in row) for row in self.rows)
        text = "\n".join(lines) + "\n"
        if target is None:
            return text
        if isinstance(target, (str, Path)):
            with open(target, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        else:
            target.write(text)
        return text

    @staticmethod
    def metadata_path(csv_path: Union[str, Path]) -> Path:
        """Sidecar next to a CSV: `synth.csv` -> `synth.meta.yaml`."""
        return Path(csv_path).with_suffix(".meta.yaml")

    def write_metadata(self, csv_path: Union[str, Path]) -> Path:
        """Write `metadata` plus the table name as YAML beside `csv_path`."""
        path = SweepResult.metadata_path(csv_path)
        payload = {"table": self.table}
        payload.update({k: _plain(v) for k, v in self.metadata.items()})
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            yaml.safe_dump(payload, handle, sort_keys=False)
        return path


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def read_sweep_csv(path: Union[str, Path]) -> Tuple[List[str], List[Dict[str, str]]]:
    """
    Read a sweep CSV back as (columns, rows).

    Raises:
        SchemaError: If the file cannot be read, is empty or has no header
    """
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            reader = csv.DictReader(handle)
            columns = list(reader.fieldnames or [])
            if not columns:
                raise SchemaError(f"{path}: empty CSV, no header line")
            rows = list(reader)
    except OSError as e:
        raise SchemaError(f"{path}: cannot read sweep table ({e.strerror or e})") from e
    return columns, rows
