"""
Table layouts for sweep CSV files.

sweep_tables.json names each table's columns in output order; "{kind}" in a
column name stands for the quantization kind (binary or ternary).
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import SchemaError


_SCHEMA_FILE = Path(__file__).parent / "sweep_tables.json"
_KINDS = ("binary", "ternary")


@lru_cache(maxsize=1)
def load_table_schemas() -> Dict[str, Any]:
    with open(_SCHEMA_FILE, encoding="utf-8") as handle:
        return json.load(handle)


def table_columns(table: str, kind: Optional[str] = None) -> List[str]:
    """Column names of `table`, with "{kind}" filled in."""
    schemas = load_table_schemas()
    if table not in schemas:
        raise SchemaError(f"unknown table layout {table!r}")
    columns = schemas[table]["columns"]
    if any("{kind}" in c for c in columns) and kind is None:
        raise SchemaError(f"table {table!r} needs a quantization kind")
    return [c.format(kind=kind) if "{kind}" in c else c for c in columns]


def match_table(columns: Sequence[str]) -> Tuple[str, Optional[str]]:
    """
    Identify the layout of a CSV header.

    Returns:
        Tuple of (table name, kind or None)

    Raises:
        SchemaError: Naming the first missing column of the closest layout
    """
    present = set(columns)
    matches: List[Tuple[int, str, Optional[str]]] = []
    best_missing: Optional[str] = None
    best_count = -1
    for table, schema in load_table_schemas().items():
        templated = any("{kind}" in c for c in schema["columns"])
        for kind in (_KINDS if templated else (None,)):
            expected = table_columns(table, kind)
            if all(c in present for c in expected):
                matches.append((len(expected), table, kind))
                continue
            hits = sum(c in present for c in expected)
            if hits > best_count:
                best_count = hits
                best_missing = next(c for c in expected if c not in present)
    if matches:
        # The widest layout wins; theory columns are a subset of synth columns
        _, table, kind = max(matches, key=lambda m: m[0])
        return table, kind
    raise SchemaError(f"CSV does not match any sweep table; missing column {best_missing!r}", column=best_missing)
