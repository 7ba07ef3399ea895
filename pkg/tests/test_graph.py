"""Graph store behavior: lookup, ingestion shape, dedup, exports, durability."""

import pytest

from surveygraph.errors import (EmptyLabel, MissingSourceReference,
                                MissingTitle, StoreCorrupt, UnknownComparison,
                                UnresolvedReference)
from surveygraph.graph import (GraphStore, Literal, SettingsEntry, export_json,
                               export_ntriples, parse_settings,
                               render_comparison, stats)
from surveygraph.refs import BibEntry, LinkResult, append_metadata_columns
from surveygraph.tableops import from_matrix


@pytest.fixture()
def store(tmp_path):
    s = GraphStore(tmp_path / "store.log")
    yield s
    s.close()


def linked_table(rows, start=1):
    """Small helper: Reference + [R] Method + Accuracy table with metadata."""
    matrix = [["Reference", "[R] Method", "Accuracy"]] + rows
    table = from_matrix(matrix)
    links = []
    for i, row in enumerate(table.rows):
        n = start + i
        links.append(LinkResult(i, row[0], BibEntry(
            raw=f"entry {n}", title=f"Paper {row[0]}", authors=(f"Author{n}, A",),
            year=2000 + n, month=((n - 1) % 12) + 1, doi=f"10.9/p{n}")))
    return append_metadata_columns(table, links)


class TestLookupOrCreate:
    def test_idempotent(self, store):
        a = store.lookup_or_create_resource("SVM")
        b = store.lookup_or_create_resource("SVM")
        assert a.id == b.id

    def test_case_folded_match(self, store):
        a = store.lookup_or_create_resource("SVM")
        b = store.lookup_or_create_resource("svm")
        c = store.lookup_or_create_resource("  svm ")
        assert a.id == b.id == c.id
        assert store.resources[a.id].label == "SVM"  # original casing kept

    def test_empty_label(self, store):
        with pytest.raises(EmptyLabel):
            store.lookup_or_create_resource("   ")

    def test_class_constrained(self, store):
        plain = store.lookup_or_create_resource("Thing")
        classed = store.lookup_or_create_resource("Thing", cls="Paper")
        assert plain.id != classed.id
        again = store.lookup_or_create_resource("thing", cls="Paper")
        assert again.id == classed.id


class TestIngestRow:
    def test_exact_subgraph_for_one_row(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Methods overview", "Doe 2020"))
        table = linked_table([["[1]", "SVM", "0.91"]])
        contribution = store.ingest_row(table, 0, cmp.id)

        labeled = [(store.resources[s.subject].label,
                    store.predicate_label(s.predicate),
                    store.resources[s.object].label if isinstance(s.object, str)
                    else s.object.value)
                   for s in store.statements]
        assert labeled == [
            ("Methods overview", "hasTitle", "Methods overview"),
            ("Methods overview", "hasSourceReference", "Doe 2020"),
            ("Paper [1]", "hasTitle", "Paper [1]"),
            ("Paper [1]", "hasAuthor", "Author1, A"),
            ("Paper [1]", "hasMonth", "1"),
            ("Paper [1]", "hasYear", "2001"),
            ("Paper [1]", "hasDOI", "10.9/p1"),
            ("Paper [1]", "hasContribution", "Contribution 1"),
            ("Methods overview", "comparesContribution", "Contribution 1"),
            ("Contribution 1", "hasReferenceKey", "[1]"),
            ("Contribution 1", "Method", "SVM"),
            ("Contribution 1", "Accuracy", "0.91"),
        ]
        method_stmt = next(s for s in store.statements
                           if store.predicate_label(s.predicate) == "Method")
        assert isinstance(method_stmt.object, str)  # resource column -> resource
        accuracy_stmt = next(s for s in store.statements
                             if store.predicate_label(s.predicate) == "Accuracy")
        assert isinstance(accuracy_stmt.object, Literal)
        assert contribution in store.comparison(cmp.id).contributions

    def test_same_paper_two_tables_single_node(self, store):
        cmp1 = store.create_comparison(SettingsEntry("T1", "First", "S1"))
        cmp2 = store.create_comparison(SettingsEntry("T2", "Second", "S2"))
        table = linked_table([["[1]", "SVM", "0.91"]])
        store.ingest_row(table, 0, cmp1.id)
        store.ingest_row(table, 0, cmp2.id)
        assert len(store.papers()) == 1
        report = stats(store)
        assert report.contributions == 2

    def test_duplicate_row_same_comparison_merges(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Only", "S"))
        table = linked_table([["[1]", "SVM", "0.91"]])
        c1 = store.ingest_row(table, 0, cmp.id)
        c2 = store.ingest_row(table, 0, cmp.id)
        assert c1 == c2
        assert stats(store).contributions == 1
        assert stats(store).cells_plain == 2  # statements not duplicated

    def test_empty_cell_emits_nothing(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Only", "S"))
        table = linked_table([["[1]", "", "0.91"]])
        store.ingest_row(table, 0, cmp.id)
        labels = [store.predicate_label(s.predicate) for s in store.statements]
        assert "Method" not in labels and "Accuracy" in labels

    def test_unknown_comparison(self, store):
        table = linked_table([["[1]", "SVM", "0.91"]])
        with pytest.raises(UnknownComparison):
            store.ingest_row(table, 0, "R999")

    def test_unresolved_reference(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Only", "S"))
        table = linked_table([["[1]", "SVM", "0.91"]])
        bad = from_matrix([[c.render_label() for c in table.columns],
                           ["", "SVM", "0.9", "T", "A", "1", "2001", "10.9/x"]])
        with pytest.raises(UnresolvedReference):
            store.ingest_row(bad, 0, cmp.id)

    def test_doi_dedup_case_insensitive(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Only", "S"))
        t1 = linked_table([["[1]", "SVM", "0.91"]])
        store.ingest_row(t1, 0, cmp.id)
        matrix = [[c.render_label() for c in t1.columns],
                  ["[2]", "CRF", "0.8", "Other Title", "B, B", "2", "2002", "10.9/P1"]]
        store.ingest_row(from_matrix(matrix), 0, cmp.id)
        assert len(store.papers()) == 1  # 10.9/p1 == 10.9/P1

    def test_title_dedup_when_no_doi(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Only", "S"))
        cols = ["Reference", "V", "Title", "Authors", "Month", "Year", "DOI"]
        r1 = from_matrix([cols, ["[1]", "x", "Shared  Title.", "A", "", "2001", ""]])
        r2 = from_matrix([cols, ["[2]", "y", "shared title", "A", "", "2001", ""]])
        store.ingest_row(r1, 0, cmp.id)
        store.ingest_row(r2, 0, cmp.id)
        assert len(store.papers()) == 1


class TestRenderComparison:
    def test_round_trip_cells(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Overview", "Src"))
        table = linked_table([["[1]", "SVM", "0.91"],
                              ["[2]", "CRF", ""],
                              ["[3]", "", "0.77"]])
        for i in range(table.n_rows):
            store.ingest_row(table, i, cmp.id)
        rendered = render_comparison(store, cmp.id)

        def cell_triples(t):
            out = set()
            ref = t.reference_column()
            for row in t.rows:
                for c, spec in enumerate(t.columns):
                    if c != ref and row[c]:
                        out.add((row[ref], spec.label, row[c]))
            return out

        assert cell_triples(rendered) == cell_triples(table)
        assert rendered.columns[1].render_label() == "[R] Method"

    def test_empty_comparison_renders_header_only(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Empty", "Src"))
        rendered = render_comparison(store, cmp.id)
        assert rendered.n_rows == 0
        assert [c.label for c in rendered.columns] == [
            "Reference", "Title", "Authors", "Month", "Year", "DOI"]

    def test_disjoint_predicates_union(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Disjoint", "Src"))
        cols1 = ["Reference", "Left", "Title", "Authors", "Month", "Year", "DOI"]
        cols2 = ["Reference", "Right", "Title", "Authors", "Month", "Year", "DOI"]
        store.ingest_row(from_matrix([cols1, ["[1]", "a", "P1", "A", "", "2001", "10.9/a"]]), 0, cmp.id)
        store.ingest_row(from_matrix([cols2, ["[2]", "b", "P2", "B", "", "2002", "10.9/b"]]), 0, cmp.id)
        rendered = render_comparison(store, cmp.id)
        assert [c.label for c in rendered.columns[:3]] == ["Reference", "Left", "Right"]
        assert rendered.rows[0][1] == "a" and rendered.rows[0][2] == ""
        assert rendered.rows[1][1] == "" and rendered.rows[1][2] == "b"

    def test_unknown(self, store):
        with pytest.raises(UnknownComparison):
            render_comparison(store, "R404")


class TestComparisons:
    def test_missing_title(self, store):
        with pytest.raises(MissingTitle):
            store.create_comparison(SettingsEntry("T", "", "Src"))

    def test_missing_source_reference(self, store):
        with pytest.raises(MissingSourceReference):
            store.create_comparison(SettingsEntry("T", "Title", " "))

    def test_same_title_two_comparisons(self, store):
        a = store.create_comparison(SettingsEntry("T1", "Same", "S1"))
        b = store.create_comparison(SettingsEntry("T2", "Same", "S2"))
        assert a.id != b.id

    def test_settings_parsing_aliases(self):
        entries = parse_settings(
            '[{"table": "T3", "title": "QA systems survey", "ref": "Doe 2018"}]')
        assert entries == [SettingsEntry("T3", "QA systems survey", "Doe 2018")]


class TestExports:
    def test_empty_store(self, store):
        assert export_ntriples(store) == b""
        report = stats(store)
        assert (report.papers, report.comparisons, report.cells_plain,
                report.cells_with_meta) == (0, 0, 0, 0)

    def test_golden_lines_for_tiny_store(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Tiny", "Src 2020"))
        table = linked_table([["[1]", "SVM", "0.91"]])
        store.ingest_row(table, 0, cmp.id)
        ns = "http://example.org/surveygraph"
        expected = "\n".join([
            f'<{ns}/resource/R0> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{ns}/class/Comparison> .',
            f'<{ns}/resource/R0> <http://www.w3.org/2000/01/rdf-schema#label> "Tiny" .',
            f'<{ns}/resource/R1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{ns}/class/Paper> .',
            f'<{ns}/resource/R1> <http://www.w3.org/2000/01/rdf-schema#label> "Paper [1]" .',
            f'<{ns}/resource/R2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <{ns}/class/Contribution> .',
            f'<{ns}/resource/R2> <http://www.w3.org/2000/01/rdf-schema#label> "Contribution 1" .',
            f'<{ns}/resource/R3> <http://www.w3.org/2000/01/rdf-schema#label> "SVM" .',
            f'<{ns}/predicate/P0> <http://www.w3.org/2000/01/rdf-schema#label> "hasTitle" .',
            f'<{ns}/predicate/P1> <http://www.w3.org/2000/01/rdf-schema#label> "hasSourceReference" .',
            f'<{ns}/predicate/P2> <http://www.w3.org/2000/01/rdf-schema#label> "hasAuthor" .',
            f'<{ns}/predicate/P3> <http://www.w3.org/2000/01/rdf-schema#label> "hasMonth" .',
            f'<{ns}/predicate/P4> <http://www.w3.org/2000/01/rdf-schema#label> "hasYear" .',
            f'<{ns}/predicate/P5> <http://www.w3.org/2000/01/rdf-schema#label> "hasDOI" .',
            f'<{ns}/predicate/P6> <http://www.w3.org/2000/01/rdf-schema#label> "hasContribution" .',
            f'<{ns}/predicate/P7> <http://www.w3.org/2000/01/rdf-schema#label> "comparesContribution" .',
            f'<{ns}/predicate/P8> <http://www.w3.org/2000/01/rdf-schema#label> "hasReferenceKey" .',
            f'<{ns}/predicate/P9> <http://www.w3.org/2000/01/rdf-schema#label> "Method" .',
            f'<{ns}/predicate/P10> <http://www.w3.org/2000/01/rdf-schema#label> "Accuracy" .',
            f'<{ns}/resource/R0> <{ns}/predicate/P0> "Tiny" .',
            f'<{ns}/resource/R0> <{ns}/predicate/P1> "Src 2020" .',
            f'<{ns}/resource/R0> <{ns}/predicate/P7> <{ns}/resource/R2> .',
            f'<{ns}/resource/R1> <{ns}/predicate/P0> "Paper [1]" .',
            f'<{ns}/resource/R1> <{ns}/predicate/P2> "Author1, A" .',
            f'<{ns}/resource/R1> <{ns}/predicate/P3> "1" .',
            f'<{ns}/resource/R1> <{ns}/predicate/P4> "2001" .',
            f'<{ns}/resource/R1> <{ns}/predicate/P5> "10.9/p1" .',
            f'<{ns}/resource/R1> <{ns}/predicate/P6> <{ns}/resource/R2> .',
            f'<{ns}/resource/R2> <{ns}/predicate/P8> "[1]" .',
            f'<{ns}/resource/R2> <{ns}/predicate/P9> <{ns}/resource/R3> .',
            f'<{ns}/resource/R2> <{ns}/predicate/P10> "0.91" .',
        ]) + "\n"
        assert export_ntriples(store).decode("utf-8") == expected

    def test_literal_escaping(self, store):
        store.lookup_or_create_resource('weird "label"\nwith\tescapes\\')
        dump = export_ntriples(store).decode("utf-8")
        assert '"weird \\"label\\"\\nwith\\tescapes\\\\"' in dump

    def test_stats_arithmetic_ten_rows(self, store):
        cmp = store.create_comparison(SettingsEntry("T", "Ten", "Src"))
        cols = ["Reference", "[R] Method", "Accuracy", "[R] Dataset", "Venue",
                "Title", "Authors", "Month", "Year", "DOI"]
        rows = [[f"[{i}]", f"M{i}", f"0.{i}", f"D{i}", f"V{i}",
                 f"Paper {i}", f"A{i}, X", "", f"{2000 + i}", f"10.9/t{i}"]
                for i in range(1, 11)]
        table = from_matrix([cols] + rows)
        for i in range(10):
            store.ingest_row(table, i, cmp.id)
        report = stats(store)
        assert report.papers == 10
        assert report.cells_plain == 40
        assert report.cells_with_meta == 90

    def test_export_json_shape(self, store):
        import json
        store.lookup_or_create_resource("X")
        payload = json.loads(export_json(store))
        assert set(payload) == {"resources", "predicates", "statements", "comparisons"}
        assert payload["resources"][0]["label"] == "X"


class TestDurability:
    def test_close_reopen_preserves_everything(self, tmp_path):
        path = tmp_path / "store.log"
        with GraphStore(path) as store:
            cmp = store.create_comparison(SettingsEntry("T", "Keep", "Src"))
            table = linked_table([["[1]", "SVM", "0.91"], ["[2]", "CRF", "0.88"]])
            for i in range(2):
                store.ingest_row(table, i, cmp.id)
            before_stats = stats(store)
            before_nt = export_ntriples(store)
            before_json = export_json(store)
        with GraphStore(path) as store:
            assert stats(store) == before_stats
            assert export_ntriples(store) == before_nt
            assert export_json(store) == before_json

    def test_partial_trailing_line_tolerated(self, tmp_path):
        path = tmp_path / "store.log"
        with GraphStore(path) as store:
            store.lookup_or_create_resource("Alpha")
            good = export_ntriples(store)
        with open(path, "a", encoding="utf-8") as fh:
            fh.write('{"t": "res", "id": "R1", "lab')  # crash mid-write
        with GraphStore(path) as store:
            assert export_ntriples(store) == good
            store.compact()
            assert export_ntriples(store) == good
        with GraphStore(path) as store:  # compacted file loads clean
            assert export_ntriples(store) == good

    def test_compaction_preserves_exports(self, tmp_path):
        path = tmp_path / "store.log"
        with GraphStore(path) as store:
            cmp = store.create_comparison(SettingsEntry("T", "C", "S"))
            table = linked_table([["[1]", "SVM", "0.91"]])
            store.ingest_row(table, 0, cmp.id)
            before = export_ntriples(store)
            store.compact()
            assert export_ntriples(store) == before
        with GraphStore(path) as store:
            assert export_ntriples(store) == before

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "store.log"
        path.write_text("not a store\n", encoding="utf-8")
        with pytest.raises(StoreCorrupt):
            GraphStore(path)

    def test_referential_integrity_full_scan(self, tmp_path):
        with GraphStore(tmp_path / "store.log") as store:
            cmp = store.create_comparison(SettingsEntry("T", "I", "S"))
            store.ingest_row(linked_table([["[1]", "SVM", "0.91"]]), 0, cmp.id)
            assert store.integrity_errors() == []
