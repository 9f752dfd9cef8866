"""
Exact scalar fields: prime fields F_p and the rationals.

Scalars are stored as canonical raw representatives (an int in [0, p) for
F_p, a reduced Fraction for Q). FieldDesc carries the arithmetic on raw
representatives so that hot loops in elimination and enumeration never
allocate wrapper objects; Scalar is the public value type used where a
single field element crosses an API boundary.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from sympy import isprime

from src.core.errors import InvalidFieldError, MixedFieldsError, ValueOutOfFieldError

Raw = Union[int, Fraction]

MAX_PRIME = 2 ** 31


@dataclass(frozen=True)
class FieldDesc:
    """Descriptor of an exact field: F_p when `p` is set, Q otherwise."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is None:
            return
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidFieldError(f"Field characteristic must be an integer, got {self.p!r}")
        if not 2 <= self.p < MAX_PRIME:
            raise InvalidFieldError(f"Prime {self.p} outside the supported range [2, 2^31)")
        if not isprime(self.p):
            raise InvalidFieldError(f"{self.p} is not prime")

    @classmethod
    def prime(cls, p: int) -> "FieldDesc":
        return cls(p)

    @classmethod
    def rational(cls) -> "FieldDesc":
        return cls(None)

    # -- properties ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def order(self) -> Optional[int]:
        """Number of elements, None for Q."""
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def token(self) -> str:
        """Token used in .mspace files: the prime, or `Q`."""
        return str(self.p) if self.p is not None else "Q"

    def __str__(self) -> str:
        return f"F_{self.p}" if self.p is not None else "Q"

    # -- raw arithmetic -----------------------------------------------------

    @property
    def zero(self) -> Raw:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.p is not None else Fraction(1)

    def normalize(self, value) -> Raw:
        """Canonical representative of an int, Fraction or Scalar."""
        if isinstance(value, Scalar):
            self.require_same(value.field)
            return value.value
        if isinstance(value, bool):
            value = int(value)
        if self.p is not None:
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, Fraction):
                num = value.numerator % self.p
                den = value.denominator % self.p
                if den == 0:
                    raise ValueOutOfFieldError(f"{value} has a denominator divisible by {self.p}")
                return num * pow(den, -1, self.p) % self.p
            raise ValueOutOfFieldError(f"Cannot read {value!r} as an element of {self}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise ValueOutOfFieldError(f"Cannot read {value!r} as an element of {self}")

    def is_canonical(self, value) -> bool:
        if self.p is not None:
            return type(value) is int and 0 <= value < self.p
        return isinstance(value, Fraction)

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return (a + b) % self.p
        return a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return (a - b) % self.p
        return a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.p is not None:
            return a * b % self.p
        return a * b

    def neg(self, a: Raw) -> Raw:
        if self.p is not None:
            return -a % self.p
        return -a

    def inv(self, a: Raw) -> Raw:
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.p is not None:
            # pow(a, -1, p) runs the extended Euclidean algorithm
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise MixedFieldsError("The rational field cannot be enumerated")
        return iter(range(self.p))

    def is_square(self, a: Raw) -> bool:
        """Euler's criterion; 0 counts as a square."""
        if self.p is None:
            raise MixedFieldsError("Square classes are only computed over prime fields")
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    # -- conversions --------------------------------------------------------

    def format(self, a: Raw) -> str:
        if self.p is not None:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, token: str) -> Raw:
        """Read an integer or `a/b` token; entries are reduced into the field."""
        text = token.strip()
        try:
            if "/" in text:
                num_text, den_text = text.split("/", 1)
                num, den = int(num_text), int(den_text)
                if den == 0:
                    raise ValueOutOfFieldError(f"Zero denominator in {token!r}")
                if self.p is None:
                    return Fraction(num, den)
                return self.normalize(Fraction(num, den))
            return self.normalize(int(text))
        except ValueError:
            raise ValueOutOfFieldError(f"Malformed field element {token!r}")

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.normalize(value))

    def require_same(self, other: "FieldDesc") -> None:
        if other != self:
            raise MixedFieldsError(f"Field mismatch: {self} vs {other}")


@dataclass(frozen=True)
class Scalar:
    """A field element with its field attached."""

    field: FieldDesc
    value: Raw

    def __post_init__(self):
        if not self.field.is_canonical(self.value):
            object.__setattr__(self, "value", self.field.normalize(self.value))

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            self.field.require_same(other.field)
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.normalize(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)
