"""Normalized survey tables: header-first, one paper per row, typed columns."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class ColumnKind(enum.Enum):
    LITERAL = "literal"
    RESOURCE = "resource"


class ColumnRole(enum.Enum):
    REFERENCE = "reference"
    DATA = "data"
    METADATA = "metadata"


# Labels of the five appended metadata columns, in their fixed order.
METADATA_LABELS = ("Title", "Authors", "Month", "Year", "DOI")

RESOURCE_PREFIX = "[R]"


@dataclass(frozen=True)
class ColumnSpec:
    label: str
    kind: ColumnKind = ColumnKind.LITERAL
    role: ColumnRole = ColumnRole.DATA

    def render_label(self) -> str:
        """Self-describing header text: resource columns get the prefix back."""
        if self.kind is ColumnKind.RESOURCE:
            return f"{RESOURCE_PREFIX} {self.label}"
        return self.label


@dataclass(frozen=True)
class Violation:
    rule: int
    row: Optional[int] = None
    col: Optional[int] = None
    message: str = ""

    def __post_init__(self) -> None:
        if self.rule not in range(1, 7):
            raise ValueError("rule must be 1..6")


@dataclass(frozen=True, eq=True)
class SurveyTable:
    """Immutable table value; every transform returns a new instance."""

    columns: tuple[ColumnSpec, ...]
    rows: tuple[tuple[str, ...], ...]
    legend: Optional[tuple[tuple[str, str], ...]] = None

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width differs from column count")

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def legend_map(self) -> dict[str, str]:
        return dict(self.legend) if self.legend else {}

    def reference_column(self) -> Optional[int]:
        for i, col in enumerate(self.columns):
            if col.role is ColumnRole.REFERENCE:
                return i
        return None

    def column_index(self, label: str) -> Optional[int]:
        for i, col in enumerate(self.columns):
            if col.label == label:
                return i
        return None

    def matrix(self) -> list[list[str]]:
        """Full cell matrix with the rendered header as row 0."""
        return [[c.render_label() for c in self.columns]] + [list(r) for r in self.rows]


def parse_header_label(raw: str) -> tuple[str, ColumnKind]:
    """Split the resource prefix off a header cell ('[R]' with or without a
    following space); the stored label never carries the prefix."""
    text = raw.strip()
    if text.startswith(RESOURCE_PREFIX):
        return text[len(RESOURCE_PREFIX):].strip(), ColumnKind.RESOURCE
    return text, ColumnKind.LITERAL


def build_columns(header: list[str]) -> tuple[ColumnSpec, ...]:
    """Column specs from raw header texts: resource prefixes parsed, the
    first column labeled 'Reference' (case-insensitive) takes that role, and
    a trailing Title/Authors/Month/Year/DOI block is recognized as the
    appended metadata columns."""
    specs: list[ColumnSpec] = []
    reference_seen = False
    meta_start = len(header) - len(METADATA_LABELS)
    has_meta_block = meta_start > 0 and all(
        parse_header_label(h)[0] == want
        for h, want in zip(header[meta_start:], METADATA_LABELS))
    for i, raw in enumerate(header):
        label, kind = parse_header_label(raw)
        role = ColumnRole.DATA
        if has_meta_block and i >= meta_start:
            role = ColumnRole.METADATA
        elif not reference_seen and label.lower() == "reference":
            role = ColumnRole.REFERENCE
            reference_seen = True
        specs.append(ColumnSpec(label=label, kind=kind, role=role))
    return tuple(specs)
