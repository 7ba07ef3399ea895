"""Command-line pipeline: staging, idempotence, manual fallback, exports."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from surveygraph.pipeline.cli import main, parse_region

import pdfgen


@pytest.fixture()
def runner():
    return CliRunner()


def region_arg(part) -> str:
    r = part.region
    return f"{r.page_index}:{r.x0},{r.y0},{r.x1},{r.y1}"


def run(runner, ws, *args, **kwargs):
    result = runner.invoke(main, ["--workspace", str(ws), *args],
                           catch_exceptions=False, **kwargs)
    return result


def test_parse_region_syntax():
    region = parse_region("0:72,72,540,300")
    assert (region.page_index, region.x0, region.y1) == (0, 72.0, 300.0)
    with pytest.raises(Exception):
        parse_region("junk")


class TestExtract:
    def test_lattice_csv_matches_manifest(self, runner, tmp_path, ruled_2x2):
        ws = tmp_path / "ws"
        result = run(runner, ws, "extract", "--pdf", str(ruled_2x2.path),
                     "--article", "art", "--table", "t1",
                     "--region", region_arg(ruled_2x2.parts[0]), "--mode", "lattice")
        assert result.exit_code == 0, result.output
        csv_text = (ws / "articles/art/extract/t1.csv").read_text(encoding="utf-8")
        assert csv_text == "Alpha,Beta\nGamma,Delta\n"

    def test_rerun_is_noop(self, runner, tmp_path, ruled_2x2):
        ws = tmp_path / "ws"
        args = ["extract", "--pdf", str(ruled_2x2.path), "--article", "art",
                "--table", "t1", "--region", region_arg(ruled_2x2.parts[0])]
        run(runner, ws, *args)
        before = (ws / "articles/art/extract/t1.csv").read_bytes()
        result = run(runner, ws, *args)
        assert "skip" in result.output
        assert (ws / "articles/art/extract/t1.csv").read_bytes() == before

    def test_auto_falls_back_to_stream(self, runner, tmp_path, fixture_dir):
        manifest = pdfgen.make_borderless(fixture_dir / "cli_borderless.pdf",
                                          [["A", "B"], ["1", "2"]])
        ws = tmp_path / "ws"
        result = run(runner, ws, "extract", "--pdf", str(manifest.path),
                     "--article", "art", "--table", "t1",
                     "--region", region_arg(manifest.parts[0]), "--mode", "auto")
        assert result.exit_code == 0
        csv_text = (ws / "articles/art/extract/t1.csv").read_text(encoding="utf-8")
        assert csv_text == "A,B\n1,2\n"

    def test_multi_region_merges_parts(self, runner, tmp_path, fixture_dir):
        manifest = pdfgen.make_multipage(
            fixture_dir / "cli_mp.pdf", header=["H1", "H2"],
            rows_a=[["a", "b"]], rows_b=[["c", "d"]], repeat_header=True)
        ws = tmp_path / "ws"
        result = run(runner, ws, "extract", "--pdf", str(manifest.path),
                     "--article", "art", "--table", "t1",
                     "--region", region_arg(manifest.parts[0]),
                     "--region", region_arg(manifest.parts[1]))
        assert result.exit_code == 0
        csv_text = (ws / "articles/art/extract/t1.csv").read_text(encoding="utf-8")
        assert csv_text == "H1,H2\na,b\nc,d\n"
        meta = json.loads((ws / "articles/art/extract/t1.meta.json").read_text())
        assert meta["parts"] == 2

    def test_item_failure_exit_code(self, runner, tmp_path, fixture_dir):
        manifest = pdfgen.make_borderless(fixture_dir / "cli_bl2.pdf",
                                          [["A", "B"], ["1", "2"]])
        ws = tmp_path / "ws"
        result = run(runner, ws, "extract", "--pdf", str(manifest.path),
                     "--article", "art", "--table", "bad",
                     "--region", region_arg(manifest.parts[0]), "--mode", "lattice")
        assert result.exit_code == 1
        assert "ERROR art/bad" in result.output


def stage_survey(runner, ws, survey_article, survey_records_file, resolutions=None):
    """extract + format + refs for the 10-row survey fixture."""
    run(runner, ws, "extract", "--pdf", str(survey_article.path),
        "--article", "survey", "--table", "t1",
        "--region", region_arg(survey_article.parts[0]), "--mode", "lattice")
    run(runner, ws, "format")
    args = ["refs", "--records", str(survey_records_file), "--no-input"]
    if resolutions:
        args += ["--resolutions", str(resolutions)]
    return run(runner, ws, *args)


class TestFormatAndRefs:
    def test_format_applies_edit_script(self, runner, tmp_path, ruled_2x2):
        ws = tmp_path / "ws"
        run(runner, ws, "extract", "--pdf", str(ruled_2x2.path), "--article", "art",
            "--table", "t1", "--region", region_arg(ruled_2x2.parts[0]))
        edits = ws / "articles/art/edits/t1.txt"
        edits.parent.mkdir(parents=True)
        edits.write_text("set_reference_column 0\nrename_column 1 Value\n",
                         encoding="utf-8")
        result = run(runner, ws, "format")
        assert result.exit_code == 0, result.output
        formatted = (ws / "articles/art/format/t1.csv").read_text(encoding="utf-8")
        assert formatted.splitlines()[0] == "Alpha,Value"

    def test_format_blocks_on_missing_reference(self, runner, tmp_path, ruled_2x2):
        ws = tmp_path / "ws"
        run(runner, ws, "extract", "--pdf", str(ruled_2x2.path), "--article", "art",
            "--table", "t1", "--region", region_arg(ruled_2x2.parts[0]))
        result = run(runner, ws, "format")
        assert result.exit_code == 1
        assert "rule 3" in result.output

    def test_refs_all_linked_no_prompts(self, runner, tmp_path, survey_article,
                                        survey_records_file):
        ws = tmp_path / "ws"
        result = stage_survey(runner, ws, survey_article, survey_records_file)
        assert result.exit_code == 0, result.output
        assert "10/10 linked automatically" in result.output
        links = json.loads(
            (ws / "articles/survey/refs/t1.links.json").read_text(encoding="utf-8"))
        assert all(item["linked"] for item in links)
        refs_csv = (ws / "articles/survey/refs/t1.csv").read_text(encoding="utf-8")
        header = refs_csv.splitlines()[0]
        assert header.endswith("Title,Authors,Month,Year,DOI")
        assert ",1," in refs_csv  # month filled from the record file

    def test_manual_prompt_records_resolution(self, runner, tmp_path, fixture_dir,
                                              survey_records_file):
        manifest = pdfgen.make_reference_pdf(
            fixture_dir / "cli_refs.pdf",
            ["[1] Doe, J.: Known Entry. Venue (2010)."])
        ws = tmp_path / "ws"
        fmt_dir = ws / "articles/art/format"
        fmt_dir.mkdir(parents=True)
        (fmt_dir / "t1.csv").write_text(
            "Reference,Val\n[1],a\nsee above,b\n", encoding="utf-8")
        extract_dir = ws / "articles/art/extract"
        extract_dir.mkdir(parents=True)
        (extract_dir / "t1.csv").write_text("Reference,Val\n", encoding="utf-8")
        (extract_dir / "t1.meta.json").write_text(
            json.dumps({"pdf": str(manifest.path), "parts": 1}), encoding="utf-8")

        citation = "Roe, A.: Manually Pasted. Venue (2012). doi:10.7/m.1"
        result = run(runner, ws, "refs", input=citation + "\n")
        assert result.exit_code == 0, result.output
        refs_csv = (ws / "articles/art/refs/t1.csv").read_text(encoding="utf-8")
        assert "Manually Pasted" in refs_csv
        saved = (ws / "resolutions.jsonl").read_text(encoding="utf-8")
        assert json.loads(saved)["citation"] == citation

        # replay in a fresh workspace: answer comes from the file, no prompt
        ws2 = tmp_path / "ws2"
        for stage, name in (("format", "t1.csv"), ("extract", "t1.csv"),
                            ("extract", "t1.meta.json")):
            dst = ws2 / "articles/art" / stage / name
            dst.parent.mkdir(parents=True, exist_ok=True)
            dst.write_bytes((ws / "articles/art" / stage / name).read_bytes())
        result2 = run(runner, ws2, "refs", "--no-input",
                      "--resolutions", str(ws / "resolutions.jsonl"))
        assert result2.exit_code == 0, result2.output
        assert "Manually Pasted" in (ws2 / "articles/art/refs/t1.csv").read_text()

    def test_aborted_prompt_fails_item(self, runner, tmp_path, fixture_dir):
        manifest = pdfgen.make_reference_pdf(
            fixture_dir / "cli_refs2.pdf", ["[1] Doe, J.: Entry. Venue (2010)."])
        ws = tmp_path / "ws"
        fmt_dir = ws / "articles/art/format"
        fmt_dir.mkdir(parents=True)
        (fmt_dir / "t1.csv").write_text("Reference,Val\nmystery,b\n", encoding="utf-8")
        ex_dir = ws / "articles/art/extract"
        ex_dir.mkdir(parents=True)
        (ex_dir / "t1.csv").write_text("Reference,Val\n", encoding="utf-8")
        (ex_dir / "t1.meta.json").write_text(
            json.dumps({"pdf": str(manifest.path), "parts": 1}), encoding="utf-8")
        result = run(runner, ws, "refs", input="\n")
        assert result.exit_code == 1
        assert "AbortedByUser" in result.output


class TestBuildStatsExport:
    def settings_file(self, ws: Path) -> Path:
        path = ws / "settings.json"
        path.write_text(json.dumps([{
            "table": "survey/t1",
            "title": "Sequence model survey",
            "ref": "Tiny et al. 2026",
        }]), encoding="utf-8")
        return path

    def test_build_stats_export(self, runner, tmp_path, survey_article,
                                survey_records_file):
        ws = tmp_path / "ws"
        stage_survey(runner, ws, survey_article, survey_records_file)
        settings = self.settings_file(ws)

        result = run(runner, ws, "build", "--settings", str(settings))
        assert result.exit_code == 0, result.output

        again = run(runner, ws, "build", "--settings", str(settings))
        assert "skip" in again.output

        result = run(runner, ws, "stats")
        assert "papers in graph:           10" in result.output
        assert "comparisons in graph:      1" in result.output
        assert "data cells (no metadata):  40" in result.output
        assert "data cells (with metadata): 90" in result.output
        assert "references linked:         10" in result.output

        out = tmp_path / "dump.nt"
        result = run(runner, ws, "export", "--format", "ntriples",
                     "--out", str(out))
        assert result.exit_code == 0
        assert out.read_bytes().startswith(b"<http://example.org/surveygraph/")

    def test_two_fresh_runs_byte_identical(self, runner, tmp_path, survey_article,
                                           survey_records_file):
        exports = []
        for name in ("run1", "run2"):
            ws = tmp_path / name
            stage_survey(runner, ws, survey_article, survey_records_file)
            settings = self.settings_file(ws)
            run(runner, ws, "build", "--settings", str(settings))
            out = tmp_path / f"{name}.nt"
            run(runner, ws, "export", "--format", "ntriples", "--out", str(out))
            exports.append(out.read_bytes())
        assert exports[0] == exports[1]
        assert len(exports[0]) > 0


def test_dump_layout_flag(runner, tmp_path, ruled_2x2):
    result = CliRunner().invoke(main, ["dump-layout", "--pdf", str(ruled_2x2.path)],
                                catch_exceptions=False)
    assert result.exit_code == 0
    assert result.output.startswith("GLYPH 0 ")
    assert "RULE 0 H" in result.output
