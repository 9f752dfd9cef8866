"""Exception hierarchy for the mspace engine.

Every module raises a subclass of MSpaceError so that the CLI can map any
engine failure to exit code 2 with the class name in the message.
"""
from typing import Optional


class MSpaceError(Exception):
    """Base exception for all engine errors."""
    pass


class InvalidFieldError(MSpaceError):
    """Raised when a field descriptor is not a supported exact field."""
    pass


class MixedFieldsError(MSpaceError):
    """Raised when operands disagree on their field or on their dimension."""
    pass


class DimensionMismatchError(MSpaceError):
    """Raised when a vector or matrix has the wrong size for an operation."""
    pass


class SingularMatrixError(MSpaceError):
    """Raised when an invertible matrix is required."""
    pass


class ZeroVectorError(MSpaceError):
    """Raised when a nonzero vector is required."""
    pass


class InfiniteFieldError(MSpaceError):
    """Raised when a decision needs finite enumeration over the rationals."""
    pass


class GuardrailExceededError(MSpaceError):
    """Raised when an enumeration would exceed the configured cost guardrail."""
    pass


class IsotropicFormError(MSpaceError):
    """Raised when a non-isotropic form is required and an isotropic one is found."""
    pass


class SizeLimitExceededError(MSpaceError):
    """Raised outside the brute-force congruence envelope."""
    pass


class DegenerateFormError(MSpaceError):
    """Raised when the symmetrized form is degenerate."""
    pass


class EvenCharacteristicError(MSpaceError):
    """Raised for quadratic-form questions in characteristic 2."""
    pass


class NotAlternateError(MSpaceError):
    """Raised when a matrix expected to be alternate is not."""
    pass


class SingularWitnessError(MSpaceError):
    """Raised when a constructed equivalence witness fails its checks."""
    pass


class NotAFlagError(MSpaceError):
    """Raised when the level sets of X -> dim VX do not form an invariant flag."""
    pass


class NotPAltFormError(MSpaceError):
    """Raised when a space is not of the form P·Alt_m with P invertible."""
    pass


class ClassificationFailedError(MSpaceError):
    """Raised when a decomposition does not reproduce its input space."""
    pass


class CharTwoUnsupportedError(MSpaceError):
    """Raised when classification is requested over F_2."""
    pass


class NoInvertibleElementError(MSpaceError):
    """Raised when no invertible element of an affine space was found."""
    pass


class ValueOutOfFieldError(MSpaceError):
    """Raised when a token cannot be read as an element of the field."""
    pass


class ConfigError(MSpaceError):
    """Raised when the config file or an MSPACE_* override cannot be read."""
    pass


class ParseError(MSpaceError):
    """Raised on malformed .mspace input; carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
