"""Unit tests for exact fields and scalars"""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.errors import InvalidFieldError, MixedFieldsError, ValueOutOfFieldError
from src.linalg.field import FieldDesc, Scalar


class TestFieldDesc:
    """Construction and properties of field descriptors"""

    @pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
    def test_non_prime_rejected(self, p):
        with pytest.raises(InvalidFieldError):
            FieldDesc.prime(p)

    def test_non_integer_rejected(self):
        with pytest.raises(InvalidFieldError):
            FieldDesc(3.0)

    def test_prime_properties(self, f5):
        assert f5.is_finite is True
        assert f5.order == 5
        assert f5.characteristic == 5
        assert f5.token == "5"
        assert str(f5) == "F_5"

    def test_rational_properties(self, qq):
        assert qq.is_rational is True
        assert qq.order is None
        assert qq.characteristic == 0
        assert qq.token == "Q"
        assert str(qq) == "Q"

    def test_equality_by_characteristic(self):
        assert FieldDesc.prime(7) == FieldDesc.prime(7)
        assert FieldDesc.prime(7) != FieldDesc.prime(5)
        assert FieldDesc.prime(7) != FieldDesc.rational()

    def test_rationals_cannot_be_enumerated(self, qq):
        with pytest.raises(MixedFieldsError):
            qq.elements()


class TestRawArithmetic:
    """Arithmetic on raw representatives"""

    def test_normalize_prime(self, f5):
        assert f5.normalize(-1) == 4
        assert f5.normalize(12) == 2
        assert f5.normalize(Fraction(1, 2)) == 3

    def test_normalize_fraction_with_bad_denominator(self, f5):
        with pytest.raises(ValueOutOfFieldError):
            f5.normalize(Fraction(1, 5))

    def test_normalize_rational(self, qq):
        assert qq.normalize(3) == Fraction(3)
        assert isinstance(qq.normalize(3), Fraction)

    def test_inverse_and_division(self, f5):
        assert f5.inv(2) == 3
        assert f5.div(1, 2) == 3
        with pytest.raises(ZeroDivisionError):
            f5.inv(0)

    def test_square_classes(self, f5):
        assert [a for a in range(5) if f5.is_square(a)] == [0, 1, 4]

    @given(st.integers(min_value=1, max_value=6))
    def test_inverse_property_f7(self, a):
        f7 = FieldDesc.prime(7)
        assert f7.mul(a, f7.inv(a)) == 1

    @given(st.fractions().filter(lambda x: x != 0))
    def test_inverse_property_rationals(self, x):
        qq = FieldDesc.rational()
        assert qq.mul(x, qq.inv(x)) == 1


class TestParseFormat:
    """Token reading and writing"""

    def test_parse_prime(self, f5):
        assert f5.parse("7") == 2
        assert f5.parse("-1") == 4
        assert f5.parse("1/2") == 3

    def test_parse_rational(self, qq):
        assert qq.parse("2/4") == Fraction(1, 2)
        assert qq.parse("-3") == Fraction(-3)

    @pytest.mark.parametrize("token", ["x", "1.5", "1/", "1/0", ""])
    def test_parse_malformed(self, qq, token):
        with pytest.raises(ValueOutOfFieldError):
            qq.parse(token)

    def test_format(self, qq, f5):
        assert qq.format(Fraction(1, 2)) == "1/2"
        assert qq.format(Fraction(-4, 2)) == "-2"
        assert f5.format(3) == "3"


class TestScalar:
    """Scalar value type"""

    def test_canonicalized_on_construction(self, f5):
        assert Scalar(f5, 7).value == 2

    def test_operations(self, f5):
        a = Scalar(f5, 3)
        assert (a + 4).value == 2
        assert (a * Scalar(f5, 2)).value == 1
        assert (1 - Scalar(f5, 2)).value == 4
        assert (-a).value == 2
        assert (a / 3).value == 1
        assert Scalar(f5, 2).inverse().value == 3

    def test_truthiness_and_str(self, f5, qq):
        assert not Scalar(f5, 5)
        assert str(Scalar(qq, Fraction(3, 6))) == "1/2"

    def test_mixed_fields_rejected(self, f5, f3):
        with pytest.raises(MixedFieldsError):
            Scalar(f5, 1) + Scalar(f3, 1)

    def test_field_scalar_helper(self, f5):
        assert f5.scalar(-2) == Scalar(f5, 3)
