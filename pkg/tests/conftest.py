import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import pdfgen  # noqa: E402


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory) -> Path:
    return tmp_path_factory.mktemp("pdfs")


@pytest.fixture(scope="session")
def ruled_2x2(fixture_dir):
    return pdfgen.make_ruled_2x2(fixture_dir / "ruled_2x2.pdf")


@pytest.fixture(scope="session")
def empty_pdf(fixture_dir):
    return pdfgen.make_empty(fixture_dir / "empty.pdf")


@pytest.fixture(scope="session")
def scan_only_pdf(fixture_dir):
    return pdfgen.make_scan_only(fixture_dir / "scan_only.pdf")


@pytest.fixture(scope="session")
def survey_article(fixture_dir):
    return pdfgen.make_survey_article(fixture_dir / "survey.pdf")


@pytest.fixture(scope="session")
def survey_records_file(fixture_dir, survey_article) -> Path:
    path = fixture_dir / "records.tsv"
    path.write_text("\n".join(
        f"{r['doi']}\t{r['title']}\t{r['authors']}\t{r['year']}\t{r['month']}"
        for r in survey_article.records) + "\n", encoding="utf-8")
    return path
