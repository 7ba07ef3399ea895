"""Batch command-line pipeline.

Five stages, run stage-major (finish one stage for all articles before the
next): extract -> format -> refs -> build, plus stats/export reporting.
Every stage skips work whose artifacts already exist, so re-running a
command on an unchanged workspace is a no-op.

Environment:
    SURVEYGRAPH_METADATA_URL      base URL of a Crossref-compatible service
    SURVEYGRAPH_METADATA_RECORDS  local record file for the offline client
    SURVEYGRAPH_OFFLINE=1         never touch the network
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import Optional

import click

from .. import graph as graphmod
from ..errors import (AbortedByUser, InsufficientRulings, NoMatch,
                      NoReferenceSection, ServiceUnavailable, SurveyGraphError)
from ..extract import extract_lattice, extract_stream, merge_multipage, write_grid_csv
from ..pdf import Region, dump_layout, load_document
from ..refs import (BibEntry, append_metadata_columns, link_table_rows,
                    lookup_metadata, parse_citation_string, parse_reference_list)
from ..refs.metadata import CrossrefClient, MockMetadataClient
from ..tableops import read_csv, validate, write_csv
from ..tableops import from_csv_text
from .editscript import apply_script
from .resolutions import ResolutionLog
from .workspace import StatsReport, Workspace


def parse_region(text: str) -> Region:
    """CLI region syntax: 'page:x0,y0,x1,y1' in PDF points."""
    try:
        page_part, _, coords = text.partition(":")
        x0, y0, x1, y1 = (float(v) for v in coords.split(","))
        return Region(int(page_part), x0, y0, x1, y1)
    except (ValueError, TypeError) as exc:
        raise click.BadParameter(
            f"region must be 'page:x0,y0,x1,y1', got {text!r}") from exc


def metadata_client(records: Optional[str]):
    records = records or os.environ.get("SURVEYGRAPH_METADATA_RECORDS")
    if records:
        return MockMetadataClient(records)
    if os.environ.get("SURVEYGRAPH_OFFLINE"):
        return None
    url = os.environ.get("SURVEYGRAPH_METADATA_URL")
    if url:
        return CrossrefClient(url)
    return None


class ItemFailures:
    """Collects per-item errors; the run continues unless --fail-fast."""

    def __init__(self, fail_fast: bool):
        self.fail_fast = fail_fast
        self.count = 0

    def report(self, item: str, error: Exception) -> None:
        self.count += 1
        click.echo(f"ERROR {item}: {type(error).__name__}: {error}", err=True)
        if self.fail_fast:
            raise SystemExit(1)

    def exit_code(self) -> int:
        return 1 if self.count else 0


@click.group()
@click.option("--workspace", "workspace_dir", default="workspace",
              show_default=True, help="Workspace directory.")
@click.pass_context
def main(ctx: click.Context, workspace_dir: str) -> None:
    """Import survey-article tables into a scholarly knowledge graph."""
    ctx.obj = Workspace(workspace_dir)


@main.command()
@click.option("--pdf", "pdf_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--article", help="Article name (defaults to the PDF stem).")
@click.option("--table", "table_name", default="table1", show_default=True)
@click.option("--region", "regions", multiple=True,
              help="page:x0,y0,x1,y1 (repeat for multi-page parts).")
@click.option("--mode", type=click.Choice(["lattice", "stream", "auto"]),
              default="auto", show_default=True)
@click.option("--plan", "plan_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON list of {pdf, article, table, regions, mode} items.")
@click.option("--fail-fast", is_flag=True)
@click.pass_obj
def extract(ws: Workspace, pdf_path: Optional[str], article: Optional[str],
            table_name: str, regions: tuple[str, ...], mode: str,
            plan_path: Optional[str], fail_fast: bool) -> None:
    """Extract table regions from PDFs into raw grid CSVs."""
    failures = ItemFailures(fail_fast)
    items = []
    if plan_path:
        for item in json.loads(Path(plan_path).read_text(encoding="utf-8")):
            items.append((item["pdf"], item.get("article"), item["table"],
                          tuple(item["regions"]), item.get("mode", "auto")))
    if pdf_path:
        if not regions:
            raise click.UsageError("--region is required with --pdf")
        items.append((pdf_path, article, table_name, regions, mode))
    if not items:
        raise click.UsageError("nothing to extract: give --pdf or --plan")

    for pdf_file, art, table, region_specs, item_mode in items:
        art = art or Path(pdf_file).stem
        out_csv = ws.stage_path(art, "extract", table)
        if out_csv.exists():
            click.echo(f"skip {art}/{table}: already extracted")
            continue
        try:
            doc = load_document(pdf_file)
            parts = []
            for spec in region_specs:
                region = parse_region(spec)
                page = doc.pages[region.page_index]
                if item_mode == "lattice":
                    parts.append(extract_lattice(page, region))
                elif item_mode == "stream":
                    parts.append(extract_stream(page, region))
                else:
                    try:
                        parts.append(extract_lattice(page, region))
                    except InsufficientRulings:
                        parts.append(extract_stream(page, region))
            grid = merge_multipage(parts)
            ws.ensure_stage(art, "extract")
            write_grid_csv(grid, out_csv)
            out_csv.with_suffix(".meta.json").write_text(json.dumps({
                "pdf": str(Path(pdf_file).resolve()),
                "parts": len(parts),
                "mode": item_mode,
            }, indent=2) + "\n", encoding="utf-8")
            click.echo(f"extracted {art}/{table}: {grid.n_rows}x{grid.n_cols}")
        except SurveyGraphError as exc:
            failures.report(f"{art}/{table}", exc)
    sys.exit(failures.exit_code())


@main.command("format")
@click.option("--article", help="Process one article (default: all).")
@click.option("--table", "table_name", help="Process one table of the article.")
@click.option("--script", "script_path", type=click.Path(exists=True, dir_okay=False),
              help="Edit script (single-table mode only).")
@click.option("--fail-fast", is_flag=True)
@click.pass_obj
def format_cmd(ws: Workspace, article: Optional[str], table_name: Optional[str],
               script_path: Optional[str], fail_fast: bool) -> None:
    """Normalize raw grids into survey tables, applying edit scripts.

    Batch mode looks for a script at articles/<article>/edits/<table>.txt and
    applies it when present.
    """
    failures = ItemFailures(fail_fast)
    for art in ([article] if article else ws.articles()):
        for csv_path in ws.tables_in_stage(art, "extract"):
            table = csv_path.stem
            if table_name and table != table_name:
                continue
            out_csv = ws.stage_path(art, "format", table)
            if out_csv.exists():
                click.echo(f"skip {art}/{table}: already formatted")
                continue
            try:
                survey = from_csv_text(csv_path.read_text(encoding="utf-8"))
                script_file = (Path(script_path) if script_path
                               else ws.article_dir(art) / "edits" / f"{table}.txt")
                if script_file.exists():
                    survey = apply_script(survey, script_file.read_text(encoding="utf-8"))
                problems = validate(survey)
                blocking = [v for v in problems if v.rule in (1, 3)]
                if blocking:
                    raise SurveyGraphError(
                        "; ".join(f"rule {v.rule}: {v.message}" for v in blocking))
                ws.ensure_stage(art, "format")
                write_csv(survey, out_csv)
                note = f" ({len(problems)} open violations)" if problems else ""
                click.echo(f"formatted {art}/{table}: "
                           f"{survey.n_rows} rows x {survey.n_cols} cols{note}")
            except SurveyGraphError as exc:
                failures.report(f"{art}/{table}", exc)
    sys.exit(failures.exit_code())


@main.command()
@click.option("--article", help="Process one article (default: all).")
@click.option("--records", type=click.Path(exists=True, dir_okay=False),
              help="Offline metadata record file (tab-separated).")
@click.option("--resolutions", "resolutions_path", type=click.Path(dir_okay=False),
              help="Manual citation answers (JSON lines); written to when prompting.")
@click.option("--no-input", is_flag=True, help="Never prompt; unresolved rows fail.")
@click.option("--fail-fast", is_flag=True)
@click.pass_obj
def refs(ws: Workspace, article: Optional[str], records: Optional[str],
         resolutions_path: Optional[str], no_input: bool, fail_fast: bool) -> None:
    """Link citation keys to reference-list entries and append metadata."""
    failures = ItemFailures(fail_fast)
    client = metadata_client(records)
    log = ResolutionLog(resolutions_path or ws.resolutions_path)

    for art in ([article] if article else ws.articles()):
        for csv_path in ws.tables_in_stage(art, "format"):
            table = csv_path.stem
            table_id = f"{art}/{table}"
            out_csv = ws.stage_path(art, "refs", table)
            if out_csv.exists():
                click.echo(f"skip {table_id}: references done")
                continue
            try:
                survey = read_csv(csv_path)
                meta_path = ws.stage_path(art, "extract", table, ".meta.json")
                entries = []
                if meta_path.exists():
                    meta = json.loads(meta_path.read_text(encoding="utf-8"))
                    try:
                        entries = parse_reference_list(load_document(meta["pdf"]))
                    except NoReferenceSection:
                        entries = []
                links = link_table_rows(survey, entries)
                links_meta = [{"row": l.row_index, "key": l.key_text,
                               "linked": l.linked} for l in links]

                resolved = []
                for link in links:
                    entry = link.entry
                    if entry is None:
                        entry = _resolve_manually(table_id, link.row_index,
                                                  link.key_text, log, no_input)
                    if client is not None:
                        try:
                            entry = lookup_metadata(entry, client)
                        except (NoMatch, ServiceUnavailable):
                            pass  # keep what parsing gave us
                    resolved.append(link.__class__(row_index=link.row_index,
                                                   key_text=link.key_text,
                                                   entry=entry))
                enriched = append_metadata_columns(survey, resolved)
                ws.ensure_stage(art, "refs")
                write_csv(enriched, out_csv)
                ws.stage_path(art, "refs", table, ".links.json").write_text(
                    json.dumps(links_meta, indent=2) + "\n", encoding="utf-8")
                n_linked = sum(1 for l in links if l.linked)
                click.echo(f"refs {table_id}: {n_linked}/{len(links)} linked automatically")
            except SurveyGraphError as exc:
                failures.report(table_id, exc)
    sys.exit(failures.exit_code())


def _resolve_manually(table_id: str, row: int, key_text: str,
                      log: ResolutionLog, no_input: bool) -> BibEntry:
    """Manual fallback for an unlinked row: replay a recorded answer or
    prompt for the citation string pasted from the article."""
    recorded = log.lookup(table_id, row)
    if recorded is not None:
        return parse_citation_string(recorded)
    if no_input:
        raise AbortedByUser(
            f"row {row} ({key_text!r}) is unresolved and prompting is disabled")
    click.echo(f"{table_id} row {row}: could not link {key_text!r}")
    try:
        answer = input("paste citation (empty to abort): ").strip()
    except EOFError as exc:
        raise AbortedByUser(f"row {row} left unresolved") from exc
    if not answer:
        raise AbortedByUser(f"row {row} left unresolved")
    log.record(table_id, row, answer)
    return parse_citation_string(answer)


@main.command()
@click.option("--settings", "settings_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--fail-fast", is_flag=True)
@click.pass_obj
def build(ws: Workspace, settings_path: str, fail_fast: bool) -> None:
    """Ingest linked tables into the graph, one comparison per settings entry."""
    failures = ItemFailures(fail_fast)
    entries = graphmod.load_settings(settings_path)
    done = ws.ingested()
    ws.store_path.parent.mkdir(parents=True, exist_ok=True)
    with graphmod.GraphStore(ws.store_path) as store:
        for entry in entries:
            if entry.table_id in done:
                click.echo(f"skip {entry.table_id}: already ingested")
                continue
            try:
                table = read_csv(ws.refs_csv_for(entry.table_id))
                comparison = store.create_comparison(entry)
                for row_index in range(table.n_rows):
                    store.ingest_row(table, row_index, comparison.id)
                ws.mark_ingested(entry.table_id, comparison.id)
                click.echo(f"built {entry.table_id} -> {comparison.id} "
                           f"({table.n_rows} rows)")
            except (SurveyGraphError, OSError) as exc:
                failures.report(entry.table_id, exc)
    sys.exit(failures.exit_code())


@main.command()
@click.pass_obj
def stats(ws: Workspace) -> None:
    """Report counts for every pipeline step and the graph."""
    counters = ws.pipeline_counters()
    if ws.store_path.exists():
        with graphmod.GraphStore(ws.store_path) as store:
            g = graphmod.stats(store)
        counters = StatsReport(
            evaluated=counters.evaluated,
            extracted_tables=counters.extracted_tables,
            extraction_parts=counters.extraction_parts,
            linked_refs=counters.linked_refs,
            unlinked_refs=counters.unlinked_refs,
            papers=g.papers, comparisons=g.comparisons,
            cells_plain=g.cells_plain, cells_with_meta=g.cells_with_meta)
    for line in counters.lines():
        click.echo(line)


@main.command()
@click.option("--format", "fmt", type=click.Choice(["ntriples", "json"]),
              default="ntriples", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def export(ws: Workspace, fmt: str, out_path: str) -> None:
    """Write the graph as N-Triples or structured JSON."""
    if not ws.store_path.exists():
        raise click.UsageError("workspace has no graph store yet")
    with graphmod.GraphStore(ws.store_path) as store:
        payload = (graphmod.export_ntriples(store) if fmt == "ntriples"
                   else graphmod.export_json(store))
    Path(out_path).write_bytes(payload)
    click.echo(f"wrote {out_path} ({len(payload)} bytes)")


@main.command("dump-layout")
@click.option("--pdf", "pdf_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def dump_layout_cmd(pdf_path: str) -> None:
    """Debug dump of glyph boxes and rulings (fixture authoring aid)."""
    click.echo(dump_layout(load_document(pdf_path)), nl=False)


if __name__ == "__main__":
    main()
