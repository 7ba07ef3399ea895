"""HTTP API for interactive table imports (base path /api/v1).

Endpoints mirror the wizard steps; every mutation awaits validation on the
server, so the UI never needs extraction or parsing logic of its own.
Request/response bodies are JSON with stable field names.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import graph as graphmod
from ..errors import (NoMatch, NoReferenceSection, ServiceUnavailable,
                      SurveyGraphError, UnrecognizedKeyFormat)
from ..extract import diagnose, extract_lattice, extract_stream
from ..graph.settings import SettingsEntry
from ..pdf import Region, load_document

from ..refs import (append_metadata_columns, link_table_rows, lookup_metadata,
                    parse_citation_string, parse_reference_list)
from ..refs.metadata import MockMetadataClient
from ..refs.model import LinkResult
from ..tableops import from_grid, validate
from ..tableops.model import SurveyTable
from ..pipeline.editscript import apply_script
from .sessions import (ImportSession, SessionRegistry, Step,
                       StepOrderViolation, UnknownSession)

MAX_UPLOAD_BYTES = 50 * 1024 * 1024
API = "/api/v1"


def create_app(store_path: str | Path,
               records_path: Optional[str | Path] = None,
               static_dir: Optional[str | Path] = None,
               idle_eviction_s: float = 3600.0) -> FastAPI:
    app = FastAPI(title="surveygraph import service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    registry = SessionRegistry(idle_eviction_s=idle_eviction_s)
    store_path = Path(store_path)
    client = MockMetadataClient(records_path) if records_path else None

    # -- error mapping --

    @app.exception_handler(UnknownSession)
    async def _unknown_session(_req: Request, exc: UnknownSession):
        return JSONResponse(status_code=404,
                            content={"error": "unknown_session", "detail": str(exc)})

    @app.exception_handler(StepOrderViolation)
    async def _step_order(_req: Request, exc: StepOrderViolation):
        return JSONResponse(status_code=409,
                            content={"error": "step_order", "detail": str(exc)})

    @app.exception_handler(ServiceUnavailable)
    async def _service_unavailable(_req: Request, exc: ServiceUnavailable):
        return JSONResponse(status_code=502,
                            content={"error": "metadata_service", "detail": str(exc)})

    @app.exception_handler(SurveyGraphError)
    async def _domain_error(_req: Request, exc: SurveyGraphError):
        return JSONResponse(status_code=422,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    # -- serialization helpers --

    def session_json(session: ImportSession) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "session_id": session.id,
            "step": session.step.wire,
            "page_count": session.document.page_count,
        }
        if session.table is not None:
            payload["table"] = table_json(session.table)
            payload["violations"] = violations_json(session.table)
        if session.links:
            payload["links"] = [link_json(l) for l in session.links]
        return payload

    def table_json(table: SurveyTable) -> dict[str, Any]:
        return {
            "columns": [{"label": c.label, "kind": c.kind.value, "role": c.role.value}
                        for c in table.columns],
            "rows": [list(row) for row in table.rows],
            "legend": table.legend_map(),
        }

    def violations_json(table: SurveyTable) -> list[dict[str, Any]]:
        return [{"rule": v.rule, "row": v.row, "col": v.col, "message": v.message}
                for v in validate(table)]

    def link_json(link: LinkResult) -> dict[str, Any]:
        payload: dict[str, Any] = {"row": link.row_index, "key": link.key_text,
                                   "linked": link.linked}
        if link.entry is not None:
            entry = link.entry
            payload["entry"] = {
                "title": entry.title, "authors": list(entry.authors),
                "year": entry.year, "month": entry.month, "doi": entry.doi,
            }
        return payload

    # -- endpoints --

    @app.post(f"{API}/sessions", status_code=201)
    async def create_session(file: UploadFile):
        data = await file.read()
        if len(data) > MAX_UPLOAD_BYTES:
            return JSONResponse(status_code=413,
                                content={"error": "upload_too_large",
                                         "detail": f"limit is {MAX_UPLOAD_BYTES} bytes"})
        with tempfile.NamedTemporaryFile(suffix=".pdf", delete=False) as tmp:
            tmp.write(data)
            tmp_path = tmp.name
        try:
            document = load_document(tmp_path)
        finally:
            os.unlink(tmp_path)
        session = registry.create(document)
        return session_json(session)

    @app.get(f"{API}/sessions/{{session_id}}")
    async def get_session(session_id: str):
        return session_json(registry.get(session_id))

    @app.get(f"{API}/sessions/{{session_id}}/pages/{{page_index}}")
    async def get_page(session_id: str, page_index: int):
        session = registry.get(session_id)
        if not 0 <= page_index < session.document.page_count:
            return JSONResponse(status_code=404,
                                content={"error": "page_out_of_range",
                                         "detail": str(page_index)})
        page = session.document.pages[page_index]
        return {
            "index": page.index,
            "width": page.width,
            "height": page.height,
            "glyphs": [{"text": g.text, "x0": g.x0, "y0": g.y0,
                        "x1": g.x1, "y1": g.y1} for g in page.glyphs],
            "rulings": [{"orientation": r.orientation.value, "position": r.position,
                         "start": r.start, "end": r.end} for r in page.rulings],
        }

    @app.post(f"{API}/sessions/{{session_id}}/extract")
    async def extract_region(session_id: str, body: dict):
        session = registry.get(session_id)
        with session.lock:
            session.require_at_most(Step.EDIT_TABLE)
            region_spec = body.get("region") or {}
            region = Region(int(region_spec["page"]),
                            float(region_spec["x0"]), float(region_spec["y0"]),
                            float(region_spec["x1"]), float(region_spec["y1"]))
            mode = body.get("mode", "lattice")
            page = session.document.pages[region.page_index]
            grid = (extract_lattice(page, region) if mode == "lattice"
                    else extract_stream(page, region))
            session.table = from_grid(grid)
            session.links = []
            session.advance(Step.EDIT_TABLE)
            return {
                "n_rows": grid.n_rows,
                "n_cols": grid.n_cols,
                "cells": grid.texts(),
                "issues": [{"kind": i.kind.value, "row": i.row, "col": i.col,
                            "note": i.note} for i in diagnose(grid)],
                "table": table_json(session.table),
                "violations": violations_json(session.table),
            }

    @app.put(f"{API}/sessions/{{session_id}}/table")
    async def edit_table(session_id: str, body: dict):
        session = registry.get(session_id)
        with session.lock:
            session.require_exactly(Step.EDIT_TABLE)
            if session.table is None:
                raise StepOrderViolation("no table extracted yet")
            script = body.get("edits", "")
            if isinstance(script, list):
                script = "\n".join(script)
            session.table = apply_script(session.table, script)
            return {"table": table_json(session.table),
                    "violations": violations_json(session.table)}

    @app.post(f"{API}/sessions/{{session_id}}/refs/link")
    async def link_refs(session_id: str):
        session = registry.get(session_id)
        with session.lock:
            session.require_at_most(Step.RESOLVE_REFS)
            if session.table is None:
                raise StepOrderViolation("no table extracted yet")
            blocking = [v for v in validate(session.table) if v.rule in (1, 3)]
            if blocking:
                raise SurveyGraphError(
                    "; ".join(f"rule {v.rule}: {v.message}" for v in blocking))
            try:
                session.entries = parse_reference_list(session.document)
            except NoReferenceSection:
                session.entries = []
            session.links = link_table_rows(session.table, session.entries)
            session.advance(Step.RESOLVE_REFS)
            return {"links": [link_json(l) for l in session.links]}

    @app.post(f"{API}/sessions/{{session_id}}/refs/resolve")
    async def resolve_ref(session_id: str, body: dict):
        session = registry.get(session_id)
        with session.lock:
            session.require_exactly(Step.RESOLVE_REFS)
            row = int(body["row"])
            citation = str(body.get("citation_text", "")).strip()
            if not citation:
                raise UnrecognizedKeyFormat("citation_text is empty")
            if not any(l.row_index == row for l in session.links):
                raise SurveyGraphError(f"row {row} has no link slot")
            entry = parse_citation_string(citation)
            session.links = [
                LinkResult(row_index=l.row_index, key_text=l.key_text, entry=entry)
                if l.row_index == row else l
                for l in session.links
            ]
            link = next(l for l in session.links if l.row_index == row)
            return link_json(link)

    @app.post(f"{API}/sessions/{{session_id}}/ingest")
    async def ingest(session_id: str, body: dict):
        session = registry.get(session_id)
        with session.lock:
            session.require_exactly(Step.RESOLVE_REFS)
            if session.table is None:
                raise StepOrderViolation("no table extracted yet")
            title = str(body.get("title", "")).strip()
            source_reference = str(body.get("source_reference", "")).strip()
            entry = SettingsEntry(table_id=body.get("table_id", session.id),
                                  title=title, source_reference=source_reference)
            resolved = []
            for link in session.links:
                item = link.entry
                if item is not None and client is not None:
                    try:
                        item = lookup_metadata(item, client)
                    except NoMatch:
                        pass
                resolved.append(LinkResult(row_index=link.row_index,
                                           key_text=link.key_text, entry=item))
            session.advance(Step.INGEST)
            try:
                enriched = append_metadata_columns(session.table, resolved)
                store_path.parent.mkdir(parents=True, exist_ok=True)
                with graphmod.GraphStore(store_path) as store:
                    comparison = store.create_comparison(entry)
                    paper_ids = []
                    for row_index in range(enriched.n_rows):
                        contribution = store.ingest_row(enriched, row_index,
                                                        comparison.id)
                        paper = store.paper_of_contribution(contribution)
                        paper_ids.append(paper)
                session.advance(Step.DONE)
                return {"comparison_id": comparison.id, "paper_ids": paper_ids}
            except SurveyGraphError:
                session.step = Step.RESOLVE_REFS
                raise

    static = Path(static_dir) if static_dir else None
    if static and static.is_dir():
        app.mount("/", StaticFiles(directory=str(static), html=True), name="ui")

    return app
