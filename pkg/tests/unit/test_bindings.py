"""
Unit tests for the bindings file reader and generated JSONL records
"""

import json

import pytest

from spikit.primegen import (
    BindingsFormatError,
    GeneratedRecord,
    Role,
    generate_pair,
    parse_bindings_line,
    read_bindings,
)


@pytest.mark.unit
class TestParseBindingsLine:
    """Test one bindings line"""

    def test_fields(self):
        record = parse_bindings_line(
            "simple_dative | subject=A man | verb=tells | direct_object=stories"
            " | prep=to | indirect_object=people",
            4,
        )
        assert record.line_no == 4
        assert record.pair_type == "simple_dative"
        assert record.bindings == {
            "subject": "A man",
            "verb": "tells",
            "direct_object": "stories",
            "prep": "to",
            "indirect_object": "people",
        }

    def test_value_may_contain_equals(self):
        record = parse_bindings_line("simple_po | subject=x = y", 1)
        assert record.bindings == {"subject": "x = y"}

    def test_trailing_separator_is_ignored(self):
        record = parse_bindings_line("genitive | head=Reflections |", 1)
        assert record.bindings == {"head": "Reflections"}

    def test_missing_type(self):
        with pytest.raises(BindingsFormatError) as info:
            parse_bindings_line(" | subject=a man", 7)
        assert info.value.line_no == 7

    def test_field_without_equals(self):
        with pytest.raises(BindingsFormatError):
            parse_bindings_line("simple_po | subject", 1)

    def test_duplicate_slot(self):
        with pytest.raises(BindingsFormatError, match="bound twice"):
            parse_bindings_line("simple_po | verb=tells | verb=gives", 1)


@pytest.mark.unit
class TestReadBindings:
    """Test bindings files"""

    def test_skips_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "bindings.txt"
        path.write_text(
            "# dative pairs\n\n"
            "simple_dative | subject=A man | verb=tells\n"
            "  \n"
            "genitive | head=Reflections\n",
            encoding="utf-8",
        )
        records = list(read_bindings(path))
        assert [r.line_no for r in records] == [3, 5]
        assert [r.pair_type for r in records] == ["simple_dative", "genitive"]

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("", encoding="utf-8")
        assert list(read_bindings(path)) == []

    def test_fixture_file(self, fixtures_dir):
        records = list(read_bindings(fixtures_dir / "bindings.txt"))
        assert len(records) >= 2
        assert all(record.bindings for record in records)


@pytest.mark.unit
class TestGeneratedRecord:
    """Test the JSONL output line"""

    def test_from_sentence(self):
        positive, _ = generate_pair(
            "simple_dative",
            {
                "subject": "A man",
                "verb": "tells",
                "direct_object": "stories",
                "prep": "to",
                "indirect_object": "people",
            },
        )
        record = GeneratedRecord.from_sentence(positive)
        line = json.loads(record.to_json_line())
        assert line == {
            "type": "simple_po",
            "role": Role.POSITIVE_PRIME.value,
            "text": "A man tells stories to people.",
            "tree": positive.tree.to_bracketed(),
        }
        assert "\n" not in record.to_json_line()
