"""Citation keys, linking, citation strings, metadata completion, columns."""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from surveygraph.errors import (MissingAuthorOrYear, NoMatch,
                                NoReferenceSection, UnrecognizedKeyFormat,
                                UnresolvedRows)
from surveygraph.pdf import load_document
from surveygraph.refs import (BibEntry, CitationKey, KeyVariant, LinkResult,
                              MockMetadataClient, append_metadata_columns,
                              generate_key, link_key, link_table_rows,
                              lookup_metadata, parse_citation_key,
                              parse_citation_string, parse_reference_list,
                              trigram_similarity)
from surveygraph.tableops import from_matrix

import pdfgen

CORPUS = json.loads((Path(__file__).parent / "data" / "citation_corpus.json")
                    .read_text(encoding="utf-8"))


def corpus_entries() -> list[BibEntry]:
    return [BibEntry(raw=item["raw"],
                     key=CitationKey.numeric(item["marker"]),
                     authors=(f"{item['surname']}, X.",),
                     year=item["year"])
            for item in CORPUS["bibliography"]]


class TestParseCitationKey:
    @pytest.mark.parametrize("cell,expected", [
        ("[12]", CitationKey.numeric(12)),
        ("12", CitationKey.numeric(12)),
        ("(12)", CitationKey.numeric(12)),
        ("Smith et al. (2010)", CitationKey.author_year("smith", 2010)),
        ("Smith et al., 2010", CitationKey.author_year("smith", 2010)),
        ("Smith and Jones 2010", CitationKey.author_year("smith", 2010)),
        ("Smith 2010a", CitationKey.author_year("smith", 2010, "a")),
        ("Van Der Berg 2020", CitationKey.author_year("van der berg", 2020)),
    ])
    def test_accepted_forms(self, cell, expected):
        assert parse_citation_key(cell) == expected

    @pytest.mark.parametrize("cell", ["see above", "", "-", "tbd", "fig. 3"])
    def test_rejected_forms(self, cell):
        with pytest.raises(UnrecognizedKeyFormat):
            parse_citation_key(cell)

    def test_render_parse_numeric_identity(self):
        key = CitationKey.numeric(7)
        assert parse_citation_key(key.render()) == key

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=1, max_value=9999))
    def test_render_parse_numeric_property(self, n):
        key = CitationKey.numeric(n)
        assert parse_citation_key(key.render()) == key

    @settings(max_examples=80, deadline=None)
    @given(st.from_regex(r"[a-z][a-z]{1,8}", fullmatch=True),
           st.integers(min_value=1200, max_value=2899),
           st.one_of(st.none(), st.sampled_from("abcdef")))
    def test_render_parse_author_year_property(self, surname, year, suffix):
        key = CitationKey.author_year(surname, year, suffix)
        assert parse_citation_key(key.render()) == key

    def test_generated_key_renders_as_author_year(self):
        key = CitationKey.generated("doe", 2018)
        parsed = parse_citation_key(key.render())
        assert (parsed.surname, parsed.year) == ("doe", 2018)
        assert parsed.variant is KeyVariant.AUTHOR_YEAR


class TestLinkKey:
    def test_numeric_exact_match(self):
        entries = corpus_entries()
        assert link_key(CitationKey.numeric(2), entries) is entries[1]

    def test_numeric_missing(self):
        assert link_key(CitationKey.numeric(99), corpus_entries()) is None

    def test_author_year_unique(self):
        entries = corpus_entries()
        hit = link_key(CitationKey.author_year("smith", 2010), entries)
        assert hit is entries[1]

    def test_ambiguous_without_suffix_conservative(self):
        assert link_key(CitationKey.author_year("lee", 2015), corpus_entries()) is None

    def test_suffix_picks_in_marker_order(self):
        entries = corpus_entries()
        assert link_key(CitationKey.author_year("lee", 2015, "a"), entries) is entries[4]
        assert link_key(CitationKey.author_year("lee", 2015, "b"), entries) is entries[5]

    def test_corpus_precision_and_recall(self):
        entries = corpus_entries()
        by_marker = {e.key.number: e for e in entries}
        outcomes = []
        for item in CORPUS["cells"]:
            try:
                key = parse_citation_key(item["cell"])
                hit = link_key(key, entries)
            except UnrecognizedKeyFormat:
                hit = None
            outcomes.append((item, hit))
        for item, hit in outcomes:
            want = item["links_to"]
            if want is None:
                assert hit is None, f"{item['cell']!r} linked but should not"
            else:
                assert hit is by_marker[want], f"{item['cell']!r} mislinked"

    def test_link_table_rows(self):
        table = from_matrix([["Reference", "V"], ["[1]", "a"], ["nope", "b"]])
        links = link_table_rows(table, corpus_entries())
        assert [l.linked for l in links] == [True, False]
        assert links[1].key_text == "nope"


class TestParseCitationString:
    def test_reference_style(self):
        entry = parse_citation_string(
            "Doe, J., Roe, A.: A Study of Fixtures. Journal of Tests (2018). "
            "doi:10.5555/fx.1")
        assert entry.authors == ("Doe, J.", "Roe, A.")
        assert entry.title == "A Study of Fixtures"
        assert entry.year == 2018
        assert entry.doi == "10.5555/fx.1"
        assert entry.month is None

    def test_minimal_year_only(self):
        entry = parse_citation_string("2018")
        assert entry.year == 2018
        assert entry.title is None and entry.authors == () and entry.doi is None

    def test_no_structure_at_all(self):
        entry = parse_citation_string("no digits or structure here")
        assert (entry.title, entry.authors, entry.year, entry.doi) == (None, (), None, None)
        assert entry.raw == "no digits or structure here"

    def test_period_author_block(self):
        entry = parse_citation_string(
            "Smith, J. Topic Modeling in Practice. Proc. of Topics (2014).")
        assert entry.authors == ("Smith, J",)
        assert entry.title == "Topic Modeling in Practice"
        assert entry.year == 2014

    def test_and_separated_authors(self):
        entry = parse_citation_string(
            "John Doe and Anna Roe: Measured Results. Results Letters (2016).")
        assert entry.authors == ("Doe, John", "Roe, Anna")


class TestGenerateKey:
    def test_simple(self):
        entry = BibEntry(raw="x", authors=("Doe, J",), year=2018)
        assert generate_key(entry) == CitationKey.generated("doe", 2018)

    def test_multiword_surname(self):
        entry = BibEntry(raw="x", authors=("Van Der Berg K",), year=2020)
        assert generate_key(entry) == CitationKey.generated("van der berg", 2020)

    def test_missing_author(self):
        with pytest.raises(MissingAuthorOrYear):
            generate_key(BibEntry(raw="x", year=2018))

    def test_missing_year(self):
        with pytest.raises(MissingAuthorOrYear):
            generate_key(BibEntry(raw="x", authors=("Doe, J",)))


class TestParseReferenceList:
    def test_numbered_entries(self, survey_article):
        doc = load_document(str(survey_article.path))
        entries = parse_reference_list(doc)
        assert len(entries) == len(survey_article.references)
        assert [e.key.number for e in entries] == list(range(1, 11))
        assert entries[0].doi == "10.5555/sg.001"

    def test_missing_heading(self, fixture_dir):
        manifest = pdfgen.make_reference_pdf(
            fixture_dir / "no_heading.pdf",
            ["[1] Doe, J.: Entry One. Venue (2010)."], heading="")
        doc = load_document(str(manifest.path))
        with pytest.raises(NoReferenceSection):
            parse_reference_list(doc)

    def test_hanging_indent_entries(self, fixture_dir):
        entries_text = [
            "Doe, J.: A Long Study of Something Rather Verbose that Will Wrap "
            "Onto the Next Line for Sure Because it Keeps Going. Venue A (2010).",
            "Roe, A.: Short One. Venue B (2011).",
        ]
        manifest = pdfgen.make_reference_pdf(fixture_dir / "hanging.pdf", entries_text,
                                             heading="Bibliography")
        doc = load_document(str(manifest.path))
        entries = parse_reference_list(doc)
        assert len(entries) == 2
        assert all(e.key is None for e in entries)
        assert entries[0].year == 2010 and entries[1].year == 2011


class TestLookupMetadata:
    def test_doi_lookup_fills_missing(self, survey_records_file):
        client = MockMetadataClient(survey_records_file)
        entry = BibEntry(raw="x", doi="10.5555/sg.001")
        filled = lookup_metadata(entry, client)
        assert filled.title == "A Study of SVM Models"
        assert filled.year == 2010 and filled.month == 1
        assert filled.authors == ("Abel, J.",)

    def test_doi_case_insensitive(self, survey_records_file):
        client = MockMetadataClient(survey_records_file)
        filled = lookup_metadata(BibEntry(raw="x", doi="10.5555/SG.001"), client)
        assert filled.title == "A Study of SVM Models"
        assert filled.doi == "10.5555/SG.001"  # present field untouched

    def test_complete_entry_unchanged(self, survey_records_file):
        client = MockMetadataClient(survey_records_file)
        entry = BibEntry(raw="x", doi="10.5555/sg.001", title="My Title",
                         authors=("Someone, E",), year=1999, month=12)
        assert lookup_metadata(entry, client) == entry

    def test_title_search_above_threshold(self, survey_records_file):
        client = MockMetadataClient(survey_records_file)
        entry = BibEntry(raw="x", title="A Study of SVM Models")
        assert lookup_metadata(entry, client).doi == "10.5555/sg.001"

    def test_title_below_threshold_no_match(self, survey_records_file):
        client = MockMetadataClient(survey_records_file)
        with pytest.raises(NoMatch):
            lookup_metadata(BibEntry(raw="x", title="Completely Unrelated Work"),
                            client)

    def test_similarity_bounds(self):
        assert trigram_similarity("Same Words", "same words") == 1.0
        assert trigram_similarity("abc", "xyz") == 0.0


class TestAppendMetadataColumns:
    def entry(self, n: int) -> BibEntry:
        return BibEntry(raw=f"e{n}", title=f"T{n}", authors=(f"A{n}, X",),
                        year=2000 + n, month=None if n == 2 else n,
                        doi=f"10.1/{n}")

    def test_five_columns_added(self):
        table = from_matrix([["Reference", "V"], ["[1]", "a"], ["[2]", "b"]])
        links = [LinkResult(0, "[1]", self.entry(1)),
                 LinkResult(1, "[2]", self.entry(2))]
        out = append_metadata_columns(table, links)
        assert out.n_cols == table.n_cols + 5
        assert [c.label for c in out.columns[-5:]] == ["Title", "Authors", "Month",
                                                       "Year", "DOI"]
        assert out.rows[0][:2] == table.rows[0]
        assert out.rows[0][2:] == ("T1", "A1, X", "1", "2001", "10.1/1")
        assert out.rows[1][4] == ""  # absent month stays empty

    def test_unresolved_rows_error(self):
        table = from_matrix([["Reference", "V"], ["[1]", "a"], ["[9]", "b"]])
        links = [LinkResult(0, "[1]", self.entry(1)), LinkResult(1, "[9]")]
        with pytest.raises(UnresolvedRows) as exc:
            append_metadata_columns(table, links)
        assert exc.value.rows == [1]
