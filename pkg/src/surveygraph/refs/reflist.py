"""Locating and segmenting the reference list of a loaded article."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import NoReferenceSection
from ..extract.grid import cluster_baselines, glyph_run_text
from ..pdf.model import Document
from .citation import parse_citation_string
from .model import BibEntry, CitationKey

_HEADING = re.compile(r"^\s*(?:[0-9]+\.?|[IVXLC]+\.)?\s*(references|bibliography)\s*$",
                      re.IGNORECASE)
_BRACKET_MARKER = re.compile(r"^\[(\d+)\]\s*(.*)$")
_DOT_MARKER = re.compile(r"^(\d{1,3})\.\s+(.*)$")
INDENT_TOLERANCE = 1.0


@dataclass(frozen=True)
class _Line:
    text: str
    x0: float


def _document_lines(doc: Document) -> list[_Line]:
    lines: list[_Line] = []
    for page in doc.pages:
        for run in cluster_baselines(page.glyphs):
            lines.append(_Line(text=glyph_run_text(run), x0=min(g.x0 for g in run)))
    return lines


def parse_reference_list(doc: Document) -> list[BibEntry]:
    """Collect the entries under the last References/Bibliography heading.

    Entries are segmented on "[n]"/"n." markers; when no entry carries a
    marker, lines flush with the left margin start entries and indented
    lines continue them.  Each entry's optional fields are filled by the
    citation-string parser; nothing is invented.
    """
    lines = _document_lines(doc)
    heading_idx = None
    for i, line in enumerate(lines):
        if _HEADING.match(line.text):
            heading_idx = i
    if heading_idx is None:
        raise NoReferenceSection("no References/Bibliography heading found")

    body = [ln for ln in lines[heading_idx + 1:] if ln.text.strip()]
    if not body:
        return []

    marked: list[tuple[int | None, str]] = []
    any_marker = False
    for ln in body:
        m = _BRACKET_MARKER.match(ln.text) or _DOT_MARKER.match(ln.text)
        if m:
            any_marker = True
            marked.append((int(m.group(1)), m.group(2)))
        else:
            marked.append((None, ln.text))

    groups: list[tuple[int | None, list[str]]] = []
    if any_marker:
        for number, text in marked:
            if number is not None:
                groups.append((number, [text]))
            elif groups:
                groups[-1][1].append(text)
            # leading unmarked lines before the first marker are prose; drop
    else:
        margin = min(ln.x0 for ln in body)
        for ln in body:
            if ln.x0 - margin <= INDENT_TOLERANCE or not groups:
                groups.append((None, [ln.text]))
            else:
                groups[-1][1].append(ln.text)

    entries: list[BibEntry] = []
    for number, parts in groups:
        raw = re.sub(r"\s+", " ", " ".join(parts)).strip()
        if not raw:
            continue
        parsed = parse_citation_string(raw)
        key = CitationKey.numeric(number) if number is not None and number >= 1 else None
        entries.append(BibEntry(raw=raw, key=key, title=parsed.title,
                                authors=parsed.authors, year=parsed.year,
                                doi=parsed.doi))
    return entries
