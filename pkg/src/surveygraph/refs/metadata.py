"""Bibliographic metadata completion against a lookup service.

Ships with an offline client backed by a local record file (one record per
line: doi, title, authors, year, month — tab-separated) so tests and batch
runs are deterministic.  The live client targets a Crossref-compatible REST
works endpoint and is rate-limited to one request per second.
"""

from __future__ import annotations

import re
import threading
import time
from pathlib import Path
from typing import Optional, Protocol

from ..errors import NoMatch, ServiceUnavailable
from .model import BibEntry

TITLE_SIMILARITY_THRESHOLD = 0.85


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", " ", text.casefold()).strip()


def _trigrams(text: str) -> set[str]:
    padded = f"  {text} "
    return {padded[i:i + 3] for i in range(len(padded) - 2)}


def trigram_similarity(a: str, b: str) -> float:
    """Jaccard similarity over padded character trigrams of normalized text."""
    ta, tb = _trigrams(_normalize(a)), _trigrams(_normalize(b))
    if not ta or not tb:
        return 0.0
    return len(ta & tb) / len(ta | tb)


class MetadataClient(Protocol):
    def by_doi(self, doi: str) -> Optional[BibEntry]: ...

    def title_candidates(self, title: str) -> list[BibEntry]: ...


class MockMetadataClient:
    """Offline client reading a local tab-separated record file."""

    def __init__(self, records_path: str | Path):
        self.records: list[BibEntry] = []
        for line in Path(records_path).read_text(encoding="utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            doi, title, authors, year, month = (line.split("\t") + [""] * 5)[:5]
            self.records.append(BibEntry(
                raw=line,
                doi=doi.strip() or None,
                title=title.strip() or None,
                authors=tuple(a.strip() for a in authors.split(";") if a.strip()),
                year=int(year) if year.strip() else None,
                month=int(month) if month.strip() else None,
            ))

    def by_doi(self, doi: str) -> Optional[BibEntry]:
        wanted = doi.strip().casefold()
        for record in self.records:
            if record.doi and record.doi.casefold() == wanted:
                return record
        return None

    def title_candidates(self, title: str) -> list[BibEntry]:
        return list(self.records)


class CrossrefClient:
    """Live client for a Crossref-compatible works endpoint."""

    def __init__(self, base_url: str, mailto: str = "", rate_limit_s: float = 1.0):
        import requests

        self.base_url = base_url.rstrip("/")
        self.session = requests.Session()
        if mailto:
            self.session.headers["User-Agent"] = f"surveygraph/0.1 (mailto:{mailto})"
        self.rate_limit_s = rate_limit_s
        self._lock = threading.Lock()
        self._last_request = 0.0

    def _get(self, url: str, params: Optional[dict] = None) -> dict:
        import requests

        with self._lock:
            wait = self.rate_limit_s - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            self._last_request = time.monotonic()
        try:
            resp = self.session.get(url, params=params, timeout=30)
        except requests.RequestException as exc:
            raise ServiceUnavailable(str(exc)) from exc
        if resp.status_code == 404:
            return {}
        if resp.status_code >= 500:
            raise ServiceUnavailable(f"{url} -> {resp.status_code}")
        resp.raise_for_status()
        return resp.json()

    @staticmethod
    def _entry_from_work(work: dict) -> Optional[BibEntry]:
        if not work:
            return None
        titles = work.get("title") or []
        authors = tuple(
            f"{a.get('family', '').strip()}, {a.get('given', '').strip()}".strip(", ")
            for a in work.get("author", []) if a.get("family"))
        issued = (work.get("issued") or {}).get("date-parts") or [[]]
        parts = issued[0] if issued else []
        year = int(parts[0]) if parts and parts[0] else None
        month = int(parts[1]) if len(parts) > 1 and parts[1] else None
        doi = work.get("DOI")
        return BibEntry(
            raw=doi or (titles[0] if titles else "unknown work"),
            title=titles[0] if titles else None,
            authors=authors,
            year=year,
            month=month if month and 1 <= month <= 12 else None,
            doi=doi,
        )

    def by_doi(self, doi: str) -> Optional[BibEntry]:
        payload = self._get(f"{self.base_url}/works/{doi}")
        return self._entry_from_work((payload.get("message") or {}))

    def title_candidates(self, title: str) -> list[BibEntry]:
        payload = self._get(f"{self.base_url}/works",
                            params={"query.title": title, "rows": 5})
        items = ((payload.get("message") or {}).get("items")) or []
        out = []
        for work in items:
            entry = self._entry_from_work(work)
            if entry is not None:
                out.append(entry)
        return out


def lookup_metadata(entry: BibEntry, client: MetadataClient) -> BibEntry:
    """Fill the entry's absent fields from the best service match.

    Queries by DOI when the entry has one, otherwise by title similarity
    (threshold 0.85).  Present fields are never overwritten.  Raises NoMatch
    when nothing qualifies; the caller keeps the unchanged entry.
    """
    if entry.doi:
        record = client.by_doi(entry.doi)
        if record is None:
            raise NoMatch(f"doi {entry.doi} unknown to the service")
        return entry.merged_with(record)
    if not entry.title:
        raise NoMatch("entry has neither doi nor title to query by")

    best: Optional[BibEntry] = None
    best_score = 0.0
    for candidate in client.title_candidates(entry.title):
        if not candidate.title:
            continue
        score = trigram_similarity(entry.title, candidate.title)
        if score > best_score:
            best, best_score = candidate, score
    if best is None or best_score < TITLE_SIMILARITY_THRESHOLD:
        raise NoMatch(f"no candidate above {TITLE_SIMILARITY_THRESHOLD}")
    return entry.merged_with(best)
