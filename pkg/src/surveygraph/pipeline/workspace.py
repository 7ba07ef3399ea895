"""Staged workspace: one directory per article, one subdirectory per stage.

Stage state is inferred from artifact presence (no separate database), which
makes runs transparent, resumable and diffable:

    <root>/articles/<article>/extract/<table>.csv   raw grid + .meta.json
    <root>/articles/<article>/format/<table>.csv    normalized survey table
    <root>/articles/<article>/refs/<table>.csv      + metadata columns
    <root>/articles/<article>/refs/<table>.links.json
    <root>/graph/store.log                          the knowledge graph
    <root>/graph/ingested.json                      table id -> comparison id
    <root>/resolutions.jsonl                        manual citation answers
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

STAGES = ("extract", "format", "refs")


@dataclass(frozen=True)
class StatsReport:
    evaluated: int = 0
    extracted_tables: int = 0
    extraction_parts: int = 0
    linked_refs: int = 0
    unlinked_refs: int = 0
    papers: int = 0
    comparisons: int = 0
    cells_plain: int = 0
    cells_with_meta: int = 0

    def lines(self) -> list[str]:
        return [
            f"articles evaluated:        {self.evaluated}",
            f"tables extracted:          {self.extracted_tables}",
            f"extraction parts:          {self.extraction_parts}",
            f"references linked:         {self.linked_refs}",
            f"references unlinked:       {self.unlinked_refs}",
            f"papers in graph:           {self.papers}",
            f"comparisons in graph:      {self.comparisons}",
            f"data cells (no metadata):  {self.cells_plain}",
            f"data cells (with metadata): {self.cells_with_meta}",
        ]


class Workspace:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    # -- paths --

    def article_dir(self, article: str) -> Path:
        return self.root / "articles" / article

    def stage_path(self, article: str, stage: str, table: str, suffix: str = ".csv") -> Path:
        return self.article_dir(article) / stage / f"{table}{suffix}"

    @property
    def store_path(self) -> Path:
        return self.root / "graph" / "store.log"

    @property
    def ingested_path(self) -> Path:
        return self.root / "graph" / "ingested.json"

    @property
    def resolutions_path(self) -> Path:
        return self.root / "resolutions.jsonl"

    def ensure_stage(self, article: str, stage: str) -> Path:
        path = self.article_dir(article) / stage
        path.mkdir(parents=True, exist_ok=True)
        return path

    # -- table id mapping ("article/table") --

    @staticmethod
    def split_table_id(table_id: str) -> tuple[str, str]:
        article, _, table = table_id.partition("/")
        if not article or not table:
            raise ValueError(f"table id must be 'article/table', got {table_id!r}")
        return article, table

    def refs_csv_for(self, table_id: str) -> Path:
        article, table = self.split_table_id(table_id)
        return self.stage_path(article, "refs", table)

    # -- ingest ledger --

    def ingested(self) -> dict[str, str]:
        if self.ingested_path.exists():
            return json.loads(self.ingested_path.read_text(encoding="utf-8"))
        return {}

    def mark_ingested(self, table_id: str, comparison_id: str) -> None:
        entries = self.ingested()
        entries[table_id] = comparison_id
        self.ingested_path.parent.mkdir(parents=True, exist_ok=True)
        self.ingested_path.write_text(
            json.dumps(entries, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    # -- enumeration for stats --

    def articles(self) -> list[str]:
        base = self.root / "articles"
        if not base.is_dir():
            return []
        return sorted(p.name for p in base.iterdir() if p.is_dir())

    def tables_in_stage(self, article: str, stage: str) -> list[Path]:
        base = self.article_dir(article) / stage
        if not base.is_dir():
            return []
        return sorted(p for p in base.glob("*.csv"))

    def pipeline_counters(self) -> StatsReport:
        evaluated = len(self.articles())
        extracted = parts = linked = unlinked = 0
        for article in self.articles():
            for csv_path in self.tables_in_stage(article, "extract"):
                extracted += 1
                meta_path = csv_path.with_suffix(".meta.json")
                if meta_path.exists():
                    meta = json.loads(meta_path.read_text(encoding="utf-8"))
                    parts += int(meta.get("parts", 1))
                else:
                    parts += 1
            refs_dir = self.article_dir(article) / "refs"
            if refs_dir.is_dir():
                for links_path in sorted(refs_dir.glob("*.links.json")):
                    payload = json.loads(links_path.read_text(encoding="utf-8"))
                    linked += sum(1 for item in payload if item.get("linked"))
                    unlinked += sum(1 for item in payload if not item.get("linked"))
        return StatsReport(evaluated=evaluated, extracted_tables=extracted,
                           extraction_parts=parts, linked_refs=linked,
                           unlinked_refs=unlinked)
