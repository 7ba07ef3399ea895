"""In-memory import sessions for the interactive wizard.

A session walks one table through upload, region selection, editing,
reference resolution and ingestion.  Steps only ever advance.  Sessions
are evicted after an hour idle; nothing is persisted until ingest, which
writes through the shared graph store.
"""

from __future__ import annotations

import enum
import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Optional

from ..errors import SurveyGraphError
from ..pdf.model import Document
from ..refs.model import BibEntry, LinkResult
from ..tableops.model import SurveyTable

IDLE_EVICTION_S = 3600.0


class Step(enum.IntEnum):
    UPLOAD = 0
    SELECT_REGION = 1
    EDIT_TABLE = 2
    RESOLVE_REFS = 3
    INGEST = 4
    DONE = 5

    @property
    def wire(self) -> str:
        return {
            Step.UPLOAD: "upload",
            Step.SELECT_REGION: "select_region",
            Step.EDIT_TABLE: "edit_table",
            Step.RESOLVE_REFS: "resolve_refs",
            Step.INGEST: "ingest",
            Step.DONE: "done",
        }[self]


class StepOrderViolation(SurveyGraphError):
    """Endpoint called ahead of (or behind) the session's step."""


class UnknownSession(SurveyGraphError):
    pass


@dataclass
class ImportSession:
    id: str
    document: Document
    step: Step = Step.SELECT_REGION
    table: Optional[SurveyTable] = None
    entries: list[BibEntry] = field(default_factory=list)
    links: list[LinkResult] = field(default_factory=list)
    last_touch: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def advance(self, step: Step) -> None:
        if step > self.step:
            self.step = step

    def require_at_most(self, step: Step) -> None:
        if self.step > step:
            raise StepOrderViolation(
                f"session is at {self.step.wire}, endpoint serves {step.wire}")

    def require_exactly(self, step: Step) -> None:
        if self.step != step:
            raise StepOrderViolation(
                f"session is at {self.step.wire}, endpoint needs {step.wire}")


class SessionRegistry:
    def __init__(self, idle_eviction_s: float = IDLE_EVICTION_S):
        self._sessions: dict[str, ImportSession] = {}
        self._lock = threading.Lock()
        self.idle_eviction_s = idle_eviction_s

    def create(self, document: Document) -> ImportSession:
        session = ImportSession(id=uuid.uuid4().hex, document=document)
        with self._lock:
            self._evict_idle()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> ImportSession:
        with self._lock:
            self._evict_idle()
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSession(session_id)
            session.last_touch = time.monotonic()
            return session

    def _evict_idle(self) -> None:
        cutoff = time.monotonic() - self.idle_eviction_s
        stale = [sid for sid, s in self._sessions.items() if s.last_touch < cutoff]
        for sid in stale:
            del self._sessions[sid]
