"""CSV round-tripping: RFC 4180, UTF-8, LF line endings, header mandatory.

Resource columns serialize with the "[R] " prefix restored so the files are
self-describing.  A legend, when present, travels in a JSON sidecar next to
the CSV (`<name>.legend.json`); the CSV itself stays plain tabular data.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from ..errors import CsvParseError, EmptyGrid
from .build import from_matrix
from .model import SurveyTable
from .transforms import with_legend


def _legend_path(path: Path) -> Path:
    return path.with_name(path.name + ".legend.json")


def to_csv_text(table: SurveyTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in table.matrix():
        writer.writerow(row)
    return buf.getvalue()


def write_csv(table: SurveyTable, path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv_text(table))
    sidecar = _legend_path(path)
    if table.legend:
        sidecar.write_text(json.dumps(dict(table.legend), ensure_ascii=False,
                                      sort_keys=True, indent=2), encoding="utf-8")
    elif sidecar.exists():
        sidecar.unlink()


def from_csv_text(text: str) -> SurveyTable:
    try:
        rows = list(csv.reader(io.StringIO(text)))
    except csv.Error as exc:
        raise CsvParseError(str(exc)) from exc
    if not rows:
        raise EmptyGrid("CSV file has no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise CsvParseError("rows have differing widths")
    return from_matrix(rows)


def read_csv(path) -> SurveyTable:
    """Parse a table back; rule violations are data for validate(), never
    errors here."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CsvParseError(f"{path} is not UTF-8") from exc
    table = from_csv_text(text)
    sidecar = _legend_path(path)
    if sidecar.exists():
        try:
            legend = json.loads(sidecar.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CsvParseError(f"{sidecar} is not valid JSON") from exc
        table = with_legend(table, legend)
    return table
