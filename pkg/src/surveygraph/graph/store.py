"""Embedded persistent graph store.

Single-file append log of JSON records behind a versioned magic header; the
whole graph is indexed in memory on open.  Writes are serialized through one
lock (single-writer, many-reader); every public mutation flushes, so a crash
loses at most a partial trailing line, which reopen tolerates and compact()
trims away.

Ids are monotone text tokens: resources "R0", "R1", ...; predicates "P0",
"P1", ...  Exports therefore come out byte-identical for identical ingestion
sequences.
"""

from __future__ import annotations

import json
import re
import threading
import unicodedata
from pathlib import Path
from typing import Optional, Union

from ..errors import (EmptyLabel, MissingSourceReference, MissingTitle,
                      StoreCorrupt, UnknownComparison, UnresolvedReference)
from ..tableops.model import ColumnKind, ColumnRole, SurveyTable
from .model import (CLASS_COMPARISON, CLASS_CONTRIBUTION, CLASS_PAPER,
                    Comparison, Literal, P_AUTHOR, P_COMPARES, P_CONTRIBUTION,
                    P_DOI, P_MONTH, P_REFERENCE_KEY, P_SOURCE_REFERENCE,
                    P_TITLE, P_YEAR, Predicate, Resource, Statement)
from .settings import SettingsEntry

MAGIC = "#surveygraph-store v1"


def normalize_label(label: str) -> str:
    return re.sub(r"\s+", " ", unicodedata.normalize("NFC", label)).strip().casefold()


def normalize_title_key(title: str) -> str:
    return normalize_label(title).rstrip(".,;: ")


class GraphStore:
    """Open with GraphStore(path); always close() (or use as context manager)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.RLock()
        self.resources: dict[str, Resource] = {}
        self.predicates: dict[str, Predicate] = {}
        self.statements: list[Statement] = []
        self._statement_set: set[tuple] = set()
        self._label_index: dict[str, list[str]] = {}
        self._predicate_index: dict[str, str] = {}
        self._paper_by_doi: dict[str, str] = {}
        self._paper_by_title: dict[str, str] = {}
        self._contribution_for: dict[tuple[str, str], str] = {}
        self._contributions_of: dict[str, list[str]] = {}
        self._paper_of_contribution: dict[str, str] = {}
        self._comparisons: dict[str, Comparison] = {}
        self._next_resource = 0
        self._next_predicate = 0
        self._fh = None
        self._load()

    # -- lifecycle --

    def _load(self) -> None:
        if self.path.exists():
            text = self.path.read_text(encoding="utf-8")
            lines = text.split("\n")
            if not lines or lines[0] != MAGIC:
                raise StoreCorrupt(f"{self.path} lacks the store header")
            for line in lines[1:]:
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError:
                    break  # partial trailing write; recoverable via compact()
                self._replay(record)
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(MAGIC + "\n", encoding="utf-8")
        self._fh = open(self.path, "a", encoding="utf-8")

    def close(self) -> None:
        with self._lock:
            if self._fh is not None:
                self._fh.close()
                self._fh = None

    def __enter__(self) -> "GraphStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def compact(self) -> None:
        """Rewrite the log in canonical order, dropping any trailing junk."""
        with self._lock:
            records = []
            for rid in sorted(self.resources, key=_id_order):
                r = self.resources[rid]
                records.append({"t": "res", "id": r.id, "label": r.label,
                                "classes": sorted(r.classes)})
            for pid in sorted(self.predicates, key=_id_order):
                p = self.predicates[pid]
                records.append({"t": "pred", "id": p.id, "label": p.label})
            for s in self.statements:
                records.append(_statement_record(s))
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(MAGIC + "\n")
                for record in records:
                    fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            if self._fh is not None:
                self._fh.close()
            tmp.replace(self.path)
            self._fh = open(self.path, "a", encoding="utf-8")

    def _append(self, record: dict) -> None:
        if self._fh is None:
            raise StoreCorrupt("store is closed")
        self._fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        self._fh.flush()

    def _replay(self, record: dict) -> None:
        kind = record.get("t")
        if kind == "res":
            resource = Resource(id=record["id"], label=record["label"],
                                classes=frozenset(record.get("classes", [])))
            self._index_resource(resource)
        elif kind == "pred":
            predicate = Predicate(id=record["id"], label=record["label"])
            self._index_predicate(predicate)
        elif kind == "stmt":
            obj: Union[str, Literal]
            obj = record["o"]["res"] if "res" in record["o"] else Literal(record["o"]["lit"])
            self._index_statement(Statement(record["s"], record["p"], obj))
        else:
            raise StoreCorrupt(f"unknown record type {kind!r}")

    # -- indexing --

    def _index_resource(self, resource: Resource) -> None:
        self.resources[resource.id] = resource
        self._label_index.setdefault(normalize_label(resource.label), []).append(resource.id)
        num = _id_order(resource.id)
        self._next_resource = max(self._next_resource, num + 1)
        if CLASS_COMPARISON in resource.classes:
            self._comparisons.setdefault(
                resource.id, Comparison(id=resource.id, title=resource.label,
                                        source_reference=""))

    def _index_predicate(self, predicate: Predicate) -> None:
        self.predicates[predicate.id] = predicate
        self._predicate_index[normalize_label(predicate.label)] = predicate.id
        self._next_predicate = max(self._next_predicate, _id_order(predicate.id) + 1)

    def _index_statement(self, statement: Statement) -> None:
        self.statements.append(statement)
        self._statement_set.add(_statement_key(statement))
        pred_label = self.predicates[statement.predicate].label
        subject = statement.subject
        if pred_label == P_DOI and isinstance(statement.object, Literal):
            self._paper_by_doi.setdefault(statement.object.value.casefold(), subject)
        elif pred_label == P_TITLE and isinstance(statement.object, Literal):
            res = self.resources.get(subject)
            if res is not None and CLASS_PAPER in res.classes:
                self._paper_by_title.setdefault(
                    normalize_title_key(statement.object.value), subject)
            if res is not None and CLASS_COMPARISON in res.classes:
                self._comparisons[subject].title = statement.object.value
        elif pred_label == P_SOURCE_REFERENCE and isinstance(statement.object, Literal):
            if subject in self._comparisons:
                self._comparisons[subject].source_reference = statement.object.value
        elif pred_label == P_CONTRIBUTION and isinstance(statement.object, str):
            self._contributions_of.setdefault(subject, []).append(statement.object)
            self._paper_of_contribution[statement.object] = subject
        elif pred_label == P_COMPARES and isinstance(statement.object, str):
            if subject in self._comparisons:
                self._comparisons[subject].contributions.append(statement.object)
                paper = self._paper_of_contribution.get(statement.object)
                if paper is not None:
                    self._contribution_for[(paper, subject)] = statement.object

    # -- primitive mutations --

    def _new_resource(self, label: str, classes: frozenset[str]) -> Resource:
        resource = Resource(id=f"R{self._next_resource}", label=label, classes=classes)
        self._append({"t": "res", "id": resource.id, "label": resource.label,
                      "classes": sorted(resource.classes)})
        self._index_resource(resource)
        return resource

    def _predicate_for(self, label: str) -> Predicate:
        norm = normalize_label(label)
        if not norm:
            raise EmptyLabel("predicate label is empty")
        existing = self._predicate_index.get(norm)
        if existing is not None:
            return self.predicates[existing]
        predicate = Predicate(id=f"P{self._next_predicate}", label=label.strip())
        self._append({"t": "pred", "id": predicate.id, "label": predicate.label})
        self._index_predicate(predicate)
        return predicate

    def _add_statement(self, subject: str, predicate_label: str,
                       obj: Union[str, Literal], dedup: bool = True) -> None:
        if subject not in self.resources:
            raise StoreCorrupt(f"statement subject {subject} not in store")
        predicate = self._predicate_for(predicate_label)
        statement = Statement(subject, predicate.id, obj)
        if dedup and _statement_key(statement) in self._statement_set:
            return
        self._append(_statement_record(statement))
        self._index_statement(statement)

    # -- public operations --

    def lookup_or_create_resource(self, label: str,
                                  cls: Optional[str] = None) -> Resource:
        """Existing resource with the same normalized label (and class, when
        given), else a new one; idempotent under normalization."""
        with self._lock:
            norm = normalize_label(label)
            if not norm:
                raise EmptyLabel("resource label is empty")
            for rid in self._label_index.get(norm, []):
                resource = self.resources[rid]
                if cls is None or cls in resource.classes:
                    return resource
            classes = frozenset({cls}) if cls else frozenset()
            return self._new_resource(label.strip(), classes)

    def create_comparison(self, entry: SettingsEntry) -> Comparison:
        with self._lock:
            if not entry.title.strip():
                raise MissingTitle("settings entry has no title")
            if not entry.source_reference.strip():
                raise MissingSourceReference("settings entry has no source reference")
            resource = self._new_resource(entry.title.strip(),
                                          frozenset({CLASS_COMPARISON}))
            self._add_statement(resource.id, P_TITLE, Literal(entry.title.strip()))
            self._add_statement(resource.id, P_SOURCE_REFERENCE,
                                Literal(entry.source_reference.strip()))
            return self._comparisons[resource.id]

    def comparison(self, comparison_id: str) -> Comparison:
        with self._lock:
            cmp = self._comparisons.get(comparison_id)
            if cmp is None:
                raise UnknownComparison(comparison_id)
            return cmp

    def comparisons(self) -> list[Comparison]:
        with self._lock:
            return [self._comparisons[cid]
                    for cid in sorted(self._comparisons, key=_id_order)]

    def ingest_row(self, table: SurveyTable, row_index: int, comparison_id: str) -> str:
        """Add one table row under a comparison; returns the contribution id.

        The paper node is found or created by DOI (case-insensitive) or,
        lacking one, by normalized title; re-ingesting the same paper in the
        same comparison merges statements into the one contribution.
        """
        with self._lock:
            if comparison_id not in self._comparisons:
                raise UnknownComparison(comparison_id)
            row = table.rows[row_index]
            cols = _classify_columns(table)
            if cols.ref is None:
                raise UnresolvedReference("table has no reference column")
            if cols.meta is None:
                raise UnresolvedReference("table has no metadata columns appended")
            ref_text = row[cols.ref].strip()
            if not ref_text:
                raise UnresolvedReference(f"row {row_index} has an empty reference cell")

            title, authors, month, year, doi = (row[c].strip() for c in cols.meta)
            paper_id = self._find_or_create_paper(ref_text, title, authors,
                                                  month, year, doi)
            contribution_id = self._contribution_for.get((paper_id, comparison_id))
            if contribution_id is None:
                ordinal = len(self._contributions_of.get(paper_id, [])) + 1
                contribution = self._new_resource(
                    f"Contribution {ordinal}", frozenset({CLASS_CONTRIBUTION}))
                contribution_id = contribution.id
                self._add_statement(paper_id, P_CONTRIBUTION, contribution_id)
                self._add_statement(comparison_id, P_COMPARES, contribution_id)
                self._add_statement(contribution_id, P_REFERENCE_KEY, Literal(ref_text))

            for c in cols.data:
                value = row[c].strip()
                if not value:
                    continue
                spec = table.columns[c]
                if spec.kind is ColumnKind.RESOURCE:
                    obj: Union[str, Literal] = self.lookup_or_create_resource(value).id
                else:
                    obj = Literal(value)
                self._add_statement(contribution_id, spec.label, obj)
            return contribution_id

    def _find_or_create_paper(self, ref_text: str, title: str, authors: str,
                              month: str, year: str, doi: str) -> str:
        paper_id = None
        if doi:
            paper_id = self._paper_by_doi.get(doi.casefold())
        elif title:
            paper_id = self._paper_by_title.get(normalize_title_key(title))
        if paper_id is None:
            label = title or ref_text
            paper = self._new_resource(label, frozenset({CLASS_PAPER}))
            paper_id = paper.id
        present = self._paper_fields(paper_id)
        if title and P_TITLE not in present:
            self._add_statement(paper_id, P_TITLE, Literal(title))
        if authors and P_AUTHOR not in present:
            for author in authors.split(";"):
                if author.strip():
                    self._add_statement(paper_id, P_AUTHOR, Literal(author.strip()))
        if month and P_MONTH not in present:
            self._add_statement(paper_id, P_MONTH, Literal(month))
        if year and P_YEAR not in present:
            self._add_statement(paper_id, P_YEAR, Literal(year))
        if doi and P_DOI not in present:
            self._add_statement(paper_id, P_DOI, Literal(doi))
        return paper_id

    def _paper_fields(self, paper_id: str) -> set[str]:
        fields = set()
        for s in self.statements:
            if s.subject == paper_id:
                fields.add(self.predicates[s.predicate].label)
        return fields

    # -- queries --

    def papers(self) -> list[Resource]:
        with self._lock:
            return [r for _, r in sorted(self.resources.items(), key=lambda kv: _id_order(kv[0]))
                    if CLASS_PAPER in r.classes]

    def statements_of(self, subject: str) -> list[Statement]:
        with self._lock:
            return [s for s in self.statements if s.subject == subject]

    def paper_of_contribution(self, contribution_id: str) -> Optional[str]:
        with self._lock:
            return self._paper_of_contribution.get(contribution_id)

    def predicate_label(self, predicate_id: str) -> str:
        return self.predicates[predicate_id].label

    def integrity_errors(self) -> list[str]:
        """Full-scan referential check: every statement dereferences."""
        with self._lock:
            problems = []
            for s in self.statements:
                if s.subject not in self.resources:
                    problems.append(f"dangling subject {s.subject}")
                if s.predicate not in self.predicates:
                    problems.append(f"dangling predicate {s.predicate}")
                if isinstance(s.object, str) and s.object not in self.resources:
                    problems.append(f"dangling object {s.object}")
            return problems


class _ColumnMap:
    __slots__ = ("ref", "data", "meta")

    def __init__(self, ref, data, meta):
        self.ref = ref
        self.data = data
        self.meta = meta


def _classify_columns(table: SurveyTable) -> _ColumnMap:
    ref = table.reference_column()
    data = [i for i, c in enumerate(table.columns) if c.role is ColumnRole.DATA]
    meta_cols = [i for i, c in enumerate(table.columns) if c.role is ColumnRole.METADATA]
    meta = meta_cols if len(meta_cols) == 5 else None
    return _ColumnMap(ref, data, meta)


def _id_order(identifier: str) -> int:
    digits = re.sub(r"\D", "", identifier)
    return int(digits) if digits else 0


def _statement_key(s: Statement) -> tuple:
    if isinstance(s.object, Literal):
        return (s.subject, s.predicate, "lit", s.object.value)
    return (s.subject, s.predicate, "res", s.object)


def _statement_record(s: Statement) -> dict:
    obj = {"lit": s.object.value} if isinstance(s.object, Literal) else {"res": s.object}
    return {"t": "stmt", "s": s.subject, "p": s.predicate, "o": obj}
