"""Formatting rules, transforms, and CSV round-tripping."""

import pytest

from surveygraph.errors import (EmptyGrid, IndexOutOfRange, MergeShapeMismatch,
                                SurveyGraphError)
from surveygraph.extract import Method, extract_stream
from surveygraph.pdf.model import Page, Region
from surveygraph.tableops import (ColumnKind, ColumnRole, from_grid,
                                  from_matrix, merge_rows, read_csv,
                                  set_reference_column, transpose, validate,
                                  with_legend, write_csv, expand_legend,
                                  split_column, merge_columns, drop_column)

from test_extract import WHOLE, synthetic_page, word_glyphs


class TestFromGrid:
    def test_reference_and_resource_parsing(self):
        table = from_matrix([["Reference", "[R] Method"], ["[5]", "SVM"]])
        ref, method = table.columns
        assert (ref.label, ref.kind, ref.role) == ("Reference", ColumnKind.LITERAL,
                                                   ColumnRole.REFERENCE)
        assert (method.label, method.kind, method.role) == ("Method", ColumnKind.RESOURCE,
                                                            ColumnRole.DATA)
        assert table.rows == (("[5]", "SVM"),)
        assert validate(table) == []

    def test_header_only_grid(self):
        table = from_matrix([["A", "B"]])
        assert table.n_rows == 0

    def test_prefix_without_space(self):
        table = from_matrix([["[R]Method"], ["SVM"]])
        assert table.columns[0].label == "Method"
        assert table.columns[0].kind is ColumnKind.RESOURCE

    def test_no_reference_column_pends_rule3(self):
        table = from_matrix([["A", "B"], ["1", "2"]])
        assert [v.rule for v in validate(table)] == [3]

    def test_empty_grid(self):
        with pytest.raises(EmptyGrid):
            from_matrix([])

    def test_from_stream_grid(self):
        glyphs = word_glyphs("Reference", 100, 700) + word_glyphs("Val", 200, 700) \
            + word_glyphs("[1]", 100, 686) + word_glyphs("x", 200, 686)
        table = from_grid(extract_stream(synthetic_page(glyphs), WHOLE))
        assert table.reference_column() == 0

    def test_nfc_normalization(self):
        decomposed = "Méthode"  # e + combining acute
        table = from_matrix([["Reference", decomposed], ["[1]", "x"]])
        assert table.columns[1].label == "Méthode"


class TestValidate:
    def test_empty_reference_cell_rule4(self):
        rows = [["Reference", "V"]] + [[f"[{i}]", "x"] for i in range(1, 5)]
        rows.append(["", "x"])  # data row index 4
        table = from_matrix(rows)
        violations = validate(table)
        assert [(v.rule, v.row) for v in violations] == [(4, 4)]

    def test_legend_abbreviation_rule6(self):
        table = with_legend(from_matrix([["Reference", "V"], ["[1]", "acc"]]),
                            {"acc": "accuracy"})
        assert [v.rule for v in validate(table)] == [6]

    def test_multi_key_cell_rule2(self):
        table = from_matrix([["Reference", "V"], ["[1, 2]", "x"]])
        assert [v.rule for v in validate(table)] == [2]

    def test_unstripped_prefix_rule5(self):
        from surveygraph.tableops.model import ColumnSpec, SurveyTable
        table = SurveyTable(
            columns=(ColumnSpec(label="Reference", role=ColumnRole.REFERENCE),
                     ColumnSpec(label="[R] Oops")),
            rows=(("[1]", "x"),))
        assert [v.rule for v in validate(table)] == [5]

    def test_empty_label_rule1(self):
        table = from_matrix([["Reference", ""], ["[1]", "x"]])
        assert [v.rule for v in validate(table)] == [1]


class TestTransforms:
    def test_transpose_definition(self):
        table = from_matrix([["a", "b", "c"], ["d", "e", "f"]])
        flipped = transpose(table)
        assert flipped.matrix() == [["a", "d"], ["b", "e"], ["c", "f"]]

    def test_transpose_involution(self):
        table = from_matrix([["Reference", "[R] Method", "Score"],
                             ["[1]", "SVM", "0.9"],
                             ["[2]", "CRF", "0.8"]])
        assert transpose(transpose(table)) == table

    def test_merge_rows_repairs_wrapped_fixture(self):
        wrapped = from_matrix([
            ["Reference", "Method", "Notes"],
            ["[1]", "SVM", "baseline system"],
            ["[2]", "CRF", "sequence labels that"],
            ["", "", "wrap across lines"],
            ["[3]", "HMM", "classic approach"],
        ])
        expected = from_matrix([
            ["Reference", "Method", "Notes"],
            ["[1]", "SVM", "baseline system"],
            ["[2]", "CRF", "sequence labels that wrap across lines"],
            ["[3]", "HMM", "classic approach"],
        ])
        assert merge_rows(wrapped, 1, 2, " ") == expected

    def test_merge_rows_guards(self):
        table = from_matrix([["A"], ["1"], ["2"]])
        with pytest.raises(MergeShapeMismatch):
            merge_rows(table, 1, 1)
        with pytest.raises(IndexOutOfRange):
            merge_rows(table, 0, 9)

    def test_split_and_merge_columns(self):
        table = from_matrix([["Reference", "Pair"], ["[1]", "a;b"]])
        split = split_column(table, 1, ";")
        assert split.rows == (("[1]", "a", "b"),)
        back = merge_columns(split, [1, 2], ";", "Pair")
        assert back.rows == (("[1]", "a;b"),)
        assert back.columns[1].label == "Pair"

    def test_drop_column(self):
        table = from_matrix([["Reference", "X"], ["[1]", "v"]])
        assert drop_column(table, 1).rows == (("[1]",),)

    def test_set_reference_column_unique(self):
        table = from_matrix([["Reference", "Key"], ["[1]", "k"]])
        moved = set_reference_column(table, 1)
        roles = [c.role for c in moved.columns]
        assert roles == [ColumnRole.DATA, ColumnRole.REFERENCE]

    def test_expand_legend_checkmark(self):
        table = with_legend(from_matrix([["Reference", "V"], ["[1]", "✓"]]),
                            {"✓": "yes"})
        assert expand_legend(table).rows == (("[1]", "yes"),)

    def test_expand_legend_whole_cell_only(self):
        table = with_legend(from_matrix([["Reference", "V"], ["[1]", "acc is good"]]),
                            {"acc": "accuracy"})
        assert expand_legend(table).rows == (("[1]", "acc is good"),)

    def test_expand_legend_requires_legend(self):
        with pytest.raises(SurveyGraphError):
            expand_legend(from_matrix([["A"], ["1"]]))


class TestCsv:
    def test_round_trip_identity(self, tmp_path):
        table = with_legend(from_matrix([
            ["Reference", "[R] Method", "Notes"],
            ["[1]", "SVM", 'tricky, "quoted" cell'],
            ["[2]", "CRF", "line one\nline two"],
        ]), {"x": "expanded"})
        path = tmp_path / "table.csv"
        write_csv(table, path)
        assert read_csv(path) == table

    def test_resource_prefix_restored_in_file(self, tmp_path):
        table = from_matrix([["Reference", "[R] Method"], ["[1]", "SVM"]])
        path = tmp_path / "t.csv"
        write_csv(table, path)
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header == "Reference,[R] Method"

    def test_second_reader_agrees_on_escaping(self, tmp_path):
        import pandas as pd
        table = from_matrix([["Reference", "Notes"],
                             ["[1]", 'comma, and "quote"']])
        path = tmp_path / "t.csv"
        write_csv(table, path)
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        assert list(frame.columns) == ["Reference", "Notes"]
        assert frame.iloc[0].tolist() == ["[1]", 'comma, and "quote"']

    def test_violations_are_data_not_errors(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("A,B\n1,2\n", encoding="utf-8")
        table = read_csv(path)
        assert [v.rule for v in validate(table)] == [3]
