"""Recorded manual citation resolutions.

JSON-lines file: {"table": <table id>, "row": <row index>, "citation": <raw
string>}.  Interactive answers are appended as they are given, so a second
run replays them and the pipeline becomes deterministic end to end.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional


class ResolutionLog:
    def __init__(self, path: Optional[str | Path]):
        self.path = Path(path) if path else None
        self._answers: dict[tuple[str, int], str] = {}
        if self.path is not None and self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                record = json.loads(line)
                key = (str(record["table"]), int(record["row"]))
                self._answers[key] = str(record["citation"])

    def lookup(self, table_id: str, row: int) -> Optional[str]:
        return self._answers.get((table_id, row))

    def record(self, table_id: str, row: int, citation: str) -> None:
        self._answers[(table_id, row)] = citation
        if self.path is None:
            return
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps({"table": table_id, "row": row,
                                 "citation": citation}, ensure_ascii=False) + "\n")
