"""The per-table settings file driving comparison creation.

A JSON document: a list of entries, each naming the table, a title for the
comparison, and the citation of the survey article the table came from (the
attribution requirement).  Short key aliases "table" and "ref" are accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import MissingSourceReference, MissingTitle, SurveyGraphError


@dataclass(frozen=True)
class SettingsEntry:
    table_id: str
    title: str
    source_reference: str


def parse_settings(text: str) -> list[SettingsEntry]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SurveyGraphError(f"settings file is not valid JSON: {exc}") from exc
    if isinstance(payload, dict):
        payload = payload.get("tables", [])
    if not isinstance(payload, list):
        raise SurveyGraphError("settings file must be a list of entries")
    entries = []
    for i, item in enumerate(payload):
        if not isinstance(item, dict):
            raise SurveyGraphError(f"settings entry {i} is not an object")
        table_id = str(item.get("table_id") or item.get("table") or "").strip()
        title = str(item.get("title") or "").strip()
        reference = str(item.get("source_reference") or item.get("ref") or "").strip()
        if not table_id:
            raise SurveyGraphError(f"settings entry {i} has no table id")
        if not title:
            raise MissingTitle(f"settings entry {i} ({table_id}) has no title")
        if not reference:
            raise MissingSourceReference(
                f"settings entry {i} ({table_id}) has no source reference")
        entries.append(SettingsEntry(table_id=table_id, title=title,
                                     source_reference=reference))
    return entries


def load_settings(path: str | Path) -> list[SettingsEntry]:
    return parse_settings(Path(path).read_text(encoding="utf-8"))
