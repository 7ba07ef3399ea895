"""Best-effort field extraction from pasted citation strings.

The parser never invents values: a field it cannot locate stays absent and
the raw string is preserved for the graph's provenance.  Good-enough on the
common “Authors: Title. Venue (year). doi:...” shapes; everything else
degrades to partial fields.
"""

from __future__ import annotations

import re
import unicodedata
from typing import Optional

from .model import BibEntry

_YEAR = re.compile(r"(?<!\d)(19\d{2}|20\d{2})(?!\d)")
_DOI = re.compile(r"\b(10\.\d{3,9}/\S+)")
_INITIALS = re.compile(r"^[A-Z](?:\.\s*[A-Z])*\.?$")


def _clean(text: str) -> str:
    return re.sub(r"\s+", " ", unicodedata.normalize("NFC", text)).strip()


_NAME_PARTICLES = {"van", "von", "der", "den", "de", "la", "le", "del",
                   "di", "da", "dos", "bin", "al"}


def _looks_like_names(block: str) -> bool:
    """True when the text consists only of name-shaped tokens."""
    if any(ch.isdigit() for ch in block):
        return False
    cleaned = re.sub(r"\bet\s+al\.?", "", block, flags=re.IGNORECASE)
    for token in re.split(r"[,;\s]+", cleaned.strip()):
        if not token or token in ("and", "&"):
            continue
        if _INITIALS.match(token):
            continue
        if token.lower().rstrip(".") in _NAME_PARTICLES:
            continue
        if re.fullmatch(r"[A-Z][^\W\d_]*[-']?[^\W\d_]*\.?", token):
            continue
        return False
    return True


def _split_author_block(text: str) -> tuple[str, str]:
    """Return (author block, remainder).

    A colon before any year token ends the author block (common in venue
    styles); otherwise the block is the longest period-delimited prefix that
    still looks like a list of names.
    """
    year_pos = _YEAR.search(text)
    colon = text.find(":")
    if colon != -1 and (year_pos is None or colon < year_pos.start()):
        return text[:colon].strip(), text[colon + 1:].strip()

    best: tuple[str, str] = ("", text.strip())
    for match in re.finditer(r"\.(?=\s)", text):
        prefix = text[:match.start()].strip()
        if _looks_like_names(prefix):
            best = (prefix, text[match.end():].strip())
    return best


def _parse_authors(block: str) -> tuple[str, ...]:
    """Author names as "Family, Given" strings."""
    block = re.sub(r"\bet\s+al\.?,?", "", block, flags=re.IGNORECASE).strip(" ,;")
    if not block:
        return ()
    if ";" in block:
        chunks = [c.strip() for c in block.split(";")]
    elif " and " in block or "&" in block:
        left, right = re.split(r"\s+(?:and|&)\s+", block, maxsplit=1)
        chunks = [c.strip() for c in left.split(",")] + [right.strip()]
        chunks = _repair_initial_pairs(chunks)
    else:
        chunks = _repair_initial_pairs([c.strip() for c in block.split(",")])
    authors = []
    for chunk in chunks:
        if not chunk:
            continue
        if "," in chunk:
            family, given = (p.strip() for p in chunk.split(",", 1))
            authors.append(f"{family}, {given}".rstrip(", "))
        else:
            words = chunk.split()
            if len(words) >= 2:
                authors.append(f"{words[-1]}, {' '.join(words[:-1])}")
            else:
                authors.append(chunk)
    return tuple(a for a in authors if a)


def _repair_initial_pairs(chunks: list[str]) -> list[str]:
    """Rejoin "Doe" + "J." comma-splits into "Doe, J." chunks."""
    out: list[str] = []
    i = 0
    while i < len(chunks):
        cur = chunks[i]
        if i + 1 < len(chunks) and _INITIALS.match(chunks[i + 1]) and "," not in cur:
            out.append(f"{cur}, {chunks[i + 1]}")
            i += 2
        else:
            out.append(cur)
            i += 1
    return out


def _pick_title(remainder: str, year: Optional[int], doi: Optional[str]) -> Optional[str]:
    segments = [s.strip() for s in re.split(r"\.\s+", remainder) if s.strip()]
    cutoff = len(segments)
    for i, seg in enumerate(segments):
        if (year is not None and str(year) in seg) or (doi is not None and doi in seg) \
                or re.search(r"\bdoi\b", seg, re.IGNORECASE):
            cutoff = i
            break
    candidates = [s for s in segments[:cutoff] if s and s[0].isupper()]
    if not candidates:
        return None
    return max(candidates, key=len)


def parse_citation_string(raw: str) -> BibEntry:
    """Structured fields from a citation string copied out of a paper."""
    text = _clean(raw)
    if not text:
        raise ValueError("citation text must be non-empty")

    year_match = _YEAR.search(text)
    year = int(year_match.group(1)) if year_match else None

    doi = None
    doi_match = _DOI.search(text)
    if doi_match:
        doi = doi_match.group(1).rstrip(".,;)")

    block, remainder = _split_author_block(text)
    authors = _parse_authors(block)
    title = _pick_title(remainder, year, doi)

    return BibEntry(raw=raw, title=title, authors=authors, year=year, doi=doi)
