"""Comparison rendering, graph exports, and graph-level statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..tableops.model import ColumnKind, ColumnRole, ColumnSpec, METADATA_LABELS, SurveyTable
from .model import (CLASS_CONTRIBUTION, CLASS_PAPER, Literal, P_AUTHOR, P_DOI,
                    P_MONTH, P_REFERENCE_KEY, P_TITLE, P_YEAR,
                    RESERVED_PREDICATES, Statement)
from .store import GraphStore, _id_order

NS = "http://example.org/surveygraph/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


def render_comparison(store: GraphStore, comparison_id: str) -> SurveyTable:
    """Rebuild the tabular overview a comparison was ingested from.

    One row per contribution in registration order; data columns are the
    union of the contributions' predicates in first-seen order, followed by
    the five metadata columns taken from each contribution's paper.
    """
    cmp = store.comparison(comparison_id)

    data_order: list[str] = []           # predicate ids, first seen first
    data_kind: dict[str, ColumnKind] = {}
    per_contribution: list[dict] = []
    for cid in cmp.contributions:
        cells: dict[str, list[str]] = {}
        ref_key = ""
        for s in store.statements_of(cid):
            label = store.predicate_label(s.predicate)
            if label == P_REFERENCE_KEY and isinstance(s.object, Literal):
                ref_key = s.object.value
                continue
            if label in RESERVED_PREDICATES:
                continue
            if s.predicate not in data_order:
                data_order.append(s.predicate)
                data_kind[s.predicate] = (ColumnKind.RESOURCE
                                          if isinstance(s.object, str)
                                          else ColumnKind.LITERAL)
            value = (store.resources[s.object].label
                     if isinstance(s.object, str) else s.object.value)
            cells.setdefault(s.predicate, []).append(value)
        paper_id = store.paper_of_contribution(cid)
        meta = _paper_metadata(store, paper_id) if paper_id else dict.fromkeys(METADATA_LABELS, "")
        per_contribution.append({"ref": ref_key, "cells": cells, "meta": meta})

    columns = [ColumnSpec(label="Reference", role=ColumnRole.REFERENCE)]
    for pid in data_order:
        columns.append(ColumnSpec(label=store.predicate_label(pid), kind=data_kind[pid]))
    for label in METADATA_LABELS:
        columns.append(ColumnSpec(label=label, role=ColumnRole.METADATA))

    rows = []
    for item in per_contribution:
        row = [item["ref"]]
        for pid in data_order:
            row.append("; ".join(item["cells"].get(pid, [])))
        row.extend(item["meta"][label] for label in METADATA_LABELS)
        rows.append(tuple(row))
    return SurveyTable(columns=tuple(columns), rows=tuple(rows))


def _paper_metadata(store: GraphStore, paper_id: str) -> dict[str, str]:
    fields = {label: "" for label in METADATA_LABELS}
    authors: list[str] = []
    for s in store.statements_of(paper_id):
        if not isinstance(s.object, Literal):
            continue
        label = store.predicate_label(s.predicate)
        if label == P_TITLE:
            fields["Title"] = s.object.value
        elif label == P_AUTHOR:
            authors.append(s.object.value)
        elif label == P_MONTH:
            fields["Month"] = s.object.value
        elif label == P_YEAR:
            fields["Year"] = s.object.value
        elif label == P_DOI:
            fields["DOI"] = s.object.value
    fields["Authors"] = "; ".join(authors)
    return fields


# -- exports ------------------------------------------------------------------


def _escape_literal(value: str) -> str:
    out = value.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


def export_ntriples(store: GraphStore) -> bytes:
    """N-Triples dump; subjects in id order, statements stable within."""
    lines: list[str] = []

    def res_iri(rid: str) -> str:
        return f"<{NS}resource/{rid}>"

    def pred_iri(pid: str) -> str:
        return f"<{NS}predicate/{pid}>"

    for rid in sorted(store.resources, key=_id_order):
        resource = store.resources[rid]
        for cls in sorted(resource.classes):
            lines.append(f"{res_iri(rid)} <{RDF_TYPE}> <{NS}class/{cls}> .")
        lines.append(f'{res_iri(rid)} <{RDFS_LABEL}> "{_escape_literal(resource.label)}" .')
    for pid in sorted(store.predicates, key=_id_order):
        predicate = store.predicates[pid]
        lines.append(f'{pred_iri(pid)} <{RDFS_LABEL}> "{_escape_literal(predicate.label)}" .')

    indexed = list(enumerate(store.statements))
    indexed.sort(key=lambda pair: (_id_order(pair[1].subject), pair[0]))
    for _, s in indexed:
        if isinstance(s.object, Literal):
            obj = f'"{_escape_literal(s.object.value)}"'
        else:
            obj = res_iri(s.object)
        lines.append(f"{res_iri(s.subject)} {pred_iri(s.predicate)} {obj} .")

    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def export_json(store: GraphStore) -> bytes:
    """Structured dump of the full store, deterministically ordered."""
    payload = {
        "resources": [
            {"id": r.id, "label": r.label, "classes": sorted(r.classes)}
            for r in (store.resources[rid]
                      for rid in sorted(store.resources, key=_id_order))
        ],
        "predicates": [
            {"id": p.id, "label": p.label}
            for p in (store.predicates[pid]
                      for pid in sorted(store.predicates, key=_id_order))
        ],
        "statements": [
            _statement_json(store, s) for s in store.statements
        ],
        "comparisons": [
            {"id": c.id, "title": c.title, "source_reference": c.source_reference,
             "contributions": list(c.contributions)}
            for c in store.comparisons()
        ],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2).encode("utf-8")


def _statement_json(store: GraphStore, s: Statement) -> dict:
    obj = ({"literal": s.object.value} if isinstance(s.object, Literal)
           else {"resource": s.object})
    return {"subject": s.subject, "predicate": s.predicate, "object": obj}


@dataclass(frozen=True)
class GraphStats:
    papers: int
    comparisons: int
    contributions: int
    cells_plain: int
    cells_with_meta: int


def stats(store: GraphStore) -> GraphStats:
    """Cell accounting: cells_plain counts the non-empty data cells ingested
    (one statement each); cells_with_meta adds the five metadata cells per
    linked row (= per contribution)."""
    contributions = [r for r in store.resources.values()
                     if CLASS_CONTRIBUTION in r.classes]
    contribution_ids = {r.id for r in contributions}
    reserved = set(RESERVED_PREDICATES)
    cells_plain = sum(
        1 for s in store.statements
        if s.subject in contribution_ids
        and store.predicate_label(s.predicate) not in reserved)
    papers = sum(1 for r in store.resources.values() if CLASS_PAPER in r.classes)
    n_contribs = len(contributions)
    return GraphStats(
        papers=papers,
        comparisons=len(store.comparisons()),
        contributions=n_contribs,
        cells_plain=cells_plain,
        cells_with_meta=cells_plain + 5 * n_contribs,
    )
