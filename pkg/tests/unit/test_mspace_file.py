"""Unit tests for the .mspace reader and writer"""
from fractions import Fraction

import pytest

from src.cli.mspace_file import parse_field, parse_mspace, read_mspace, serialize_mspace
from src.core.errors import ParseError, ValueOutOfFieldError
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, MatrixSubspace
from src.spaces.construct import affine_translate, alt_space, nt_space
from tests.fixtures.sample_data import (
    AFFINE_NT2_F3_TEXT,
    LINE_F3_TEXT,
    NON_PRIME_FIELD_TEXT,
    NT3_F3_TEXT,
    RATIONAL_TEXT,
    write_mspace,
)


class TestParse:

    def test_line(self, f3):
        space = parse_mspace(LINE_F3_TEXT)
        assert isinstance(space, MatrixSubspace)
        assert space == MatrixSubspace.span(f3, 2, [Matrix.from_rows(f3, [[0, 1], [2, 0]])])
        assert space == alt_space(2, f3)

    def test_affine(self, f3):
        space = parse_mspace(AFFINE_NT2_F3_TEXT)
        assert isinstance(space, AffineSpace)
        assert space == affine_translate(nt_space(2, f3))

    def test_comments_and_blank_lines(self, f3):
        assert parse_mspace(NT3_F3_TEXT) == nt_space(3, f3)

    def test_entries_reduced(self, f3):
        text = "field 3\nn 2\nspace 1\n0 4\n-1 0\n"
        assert parse_mspace(text) == alt_space(2, f3)

    def test_fraction_over_prime_field(self, f5):
        text = "field 5\nn 1\nspace 1\n1/2\n"
        assert parse_mspace(text) == MatrixSubspace.full(f5, 1)

    def test_rationals_canonicalized(self, qq):
        space = parse_mspace(RATIONAL_TEXT)
        assert space.basis[0] == Matrix.from_rows(qq, [[1, -6], [0, Fraction(4, 3)]])

    def test_dependent_matrices(self, f3):
        text = "field 3\nn 2\nspace 2\n0 1\n2 0\n\n0 2\n1 0\n"
        assert parse_mspace(text).dim == 1

    def test_empty_space(self, f3):
        assert parse_mspace("field 3\nn 2\nspace 0\n") == MatrixSubspace.zero(f3, 2)

    @pytest.mark.parametrize("token, order", [("3", 3), ("7", 7)])
    def test_parse_field(self, token, order):
        assert parse_field(token).order == order

    @pytest.mark.parametrize("token", ["Q", "q"])
    def test_parse_rational_field(self, token):
        assert not parse_field(token).is_finite


class TestParseErrors:

    @pytest.mark.parametrize("text, line", [
        (NON_PRIME_FIELD_TEXT, 1),
        ("field x\nn 2\nspace 0\n", 1),
        ("# header\nn 2\n", 2),
        ("field 3\nspace 0\n", 2),
        ("field 3\nn two\nspace 0\n", 2),
        ("field 3\nn 0\nspace 0\n", 2),
        ("field 3\nn 2\nspace 1\n0 1 2\n0 0\n", 4),
        ("field 3\nn 2\nspace 1\n0 1\n", 4),
        ("field 3\nn 2\nspace 1\n0 1\n0 0\n0 0\n", 6),
        ("field 3\nn 2\noffset 1\n1 0\n0 1\nspace 0\n", 3),
        ("field 3 5\nn 2\nspace 0\n", 1),
    ])
    def test_line_numbers(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_mspace(text)
        assert exc.value.line == line
        assert str(exc.value).startswith(f"line {line}: ")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_mspace("# nothing here\n\n")

    @pytest.mark.parametrize("entry", ["abc", "1/0", "1/3", "2.5"])
    def test_bad_entries(self, entry):
        with pytest.raises(ValueOutOfFieldError) as exc:
            parse_mspace(f"field 3\nn 1\nspace 1\n{entry}\n")
        assert "line 4" in str(exc.value)

    def test_read_prefixes_path(self, tmp_path):
        path = write_mspace(tmp_path, "bad.mspace", NON_PRIME_FIELD_TEXT)
        with pytest.raises(ParseError) as exc:
            read_mspace(path)
        assert path in str(exc.value)
        assert exc.value.line == 1

    def test_read_rejects_invalid_utf8(self, tmp_path):
        path = tmp_path / "latin1.mspace"
        path.write_bytes(b"field 3\nn 1\n# caf\xe9\nspace 1\n1\n")
        with pytest.raises(ParseError) as exc:
            read_mspace(str(path))
        assert str(path) in str(exc.value)
        assert "UTF-8" in str(exc.value)
        assert exc.value.line == 3


class TestSerialize:

    def test_line(self):
        assert serialize_mspace(parse_mspace(LINE_F3_TEXT)) == LINE_F3_TEXT

    def test_affine_with_comment(self):
        text = serialize_mspace(parse_mspace(AFFINE_NT2_F3_TEXT), comment="I + NT_2\nover F_3")
        assert text.startswith("# I + NT_2\n# over F_3\nfield 3\n")
        assert text.endswith(AFFINE_NT2_F3_TEXT.split("n 2\n", 1)[1])

    def test_rational(self):
        text = serialize_mspace(parse_mspace(RATIONAL_TEXT))
        assert "1 -6\n0 4/3\n" in text
        assert text.startswith("field Q\nn 2\nspace 1\n")

    @pytest.mark.parametrize("text", [LINE_F3_TEXT, AFFINE_NT2_F3_TEXT, NT3_F3_TEXT, RATIONAL_TEXT])
    def test_serialize_is_canonical(self, text):
        once = serialize_mspace(parse_mspace(text))
        assert parse_mspace(once) == parse_mspace(text)
        assert serialize_mspace(parse_mspace(once)) == once

    def test_basis_separated_by_blank_lines(self, f3):
        lines = serialize_mspace(nt_space(3, f3)).splitlines()
        assert lines[:3] == ["field 3", "n 3", "space 3"]
        assert lines.count("") == 2

    def test_file_round_trip(self, tmp_path, f3):
        path = write_mspace(tmp_path, "nt3.mspace", serialize_mspace(nt_space(3, f3)))
        assert read_mspace(path) == nt_space(3, f3)
