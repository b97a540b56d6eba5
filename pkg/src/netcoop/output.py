"""CSV and JSON emitters for result rows.

Rows are any objects with a ``columns`` class attribute and a ``record()``
method. Floats are written with ``repr`` (shortest round-trip form), booleans
as ``true``/``false``, missing values as empty fields (``null`` in JSON).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Iterable, Sequence


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(rows: Iterable, columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        rec = row.record()
        writer.writerow([_cell(rec[c]) for c in columns])
    return buf.getvalue()


def format_json(rows: Iterable, columns: Sequence[str]) -> str:
    records = [{c: row.record()[c] for c in columns} for row in rows]
    return json.dumps(records, indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path!r}: {exc.strerror}") from None


def write_csv(rows: Iterable, path: str | None, columns: Sequence[str]) -> None:
    _emit(format_csv(rows, columns), path)


def write_json(rows: Iterable, path: str | None, columns: Sequence[str]) -> None:
    _emit(format_json(rows, columns), path)


def read_csv(path: str) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))
