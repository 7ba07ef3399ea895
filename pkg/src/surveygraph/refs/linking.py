"""Connecting parsed citation keys to reference-list entries."""

from __future__ import annotations

from typing import Optional

from ..errors import UnrecognizedKeyFormat
from ..tableops.model import SurveyTable
from .keys import first_surname, parse_citation_key
from .model import BibEntry, CitationKey, KeyVariant, LinkResult


def _entry_surname(entry: BibEntry) -> Optional[str]:
    if not entry.authors:
        return None
    return first_surname(entry.authors[0])


def link_key(key: CitationKey, entries: list[BibEntry]) -> Optional[BibEntry]:
    """The entry a key points at, or None.

    Numeric keys must match exactly one entry's marker.  Author-year keys
    match on (first-author surname, year) after case-folding; when several
    entries tie, a suffix letter picks by position in marker order and the
    absence of a suffix yields None rather than a guess.
    """
    if key.variant is KeyVariant.NUMERIC:
        hits = [e for e in entries
                if e.key is not None and e.key.variant is KeyVariant.NUMERIC
                and e.key.number == key.number]
        return hits[0] if len(hits) == 1 else None

    hits = [e for e in entries
            if e.year == key.year and _entry_surname(e) == key.surname]
    if len(hits) == 1 and key.suffix is None:
        return hits[0]
    if len(hits) > 1 and key.suffix is not None:
        position = ord(key.suffix) - ord("a")
        if 0 <= position < len(hits):
            return hits[position]
    return None


def link_table_rows(table: SurveyTable, entries: list[BibEntry]) -> list[LinkResult]:
    """One LinkResult per table row, in row order.

    Rows whose reference cell does not parse as a key, or whose key matches
    no entry, come back unlinked and queue up for manual resolution.
    """
    ref_col = table.reference_column()
    if ref_col is None:
        raise UnrecognizedKeyFormat("table has no reference column")
    results: list[LinkResult] = []
    for i, row in enumerate(table.rows):
        cell = row[ref_col]
        try:
            key = parse_citation_key(cell)
        except UnrecognizedKeyFormat:
            results.append(LinkResult(row_index=i, key_text=cell))
            continue
        entry = link_key(key, entries)
        results.append(LinkResult(row_index=i, key_text=cell, entry=entry))
    return results
