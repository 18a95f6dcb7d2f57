"""Exception hierarchy shared across the package.

Three coarse classes matter to callers (and to the CLI exit-code map):
bad input, refused searches, and internal invariant violations.  Anything
raised as InternalCheckError means a mathematical certificate failed to
verify and the result cannot be trusted.
"""


class HomrangeError(Exception):
    """Base class for all package errors."""


class UserInputError(HomrangeError):
    """Invalid input: bad field/algebra data, shape mismatch, parse errors."""


class FieldMismatchError(UserInputError):
    """Operands belong to different fields."""


class ShapeError(UserInputError):
    """Matrix or complex dimensions are incompatible."""


class SingularMatrixError(UserInputError):
    """Inversion of a square but singular matrix was requested."""


class NotIrreducibleError(UserInputError):
    """A candidate minimal polynomial factored over the base field."""


class IrreducibilityUndecidedError(UserInputError):
    """Irreducibility could not be certified; pass assume_irreducible to proceed."""


class InseparableError(UserInputError):
    """gcd(m, m') is non-constant: the extension is not separable."""


class AdmissibilityError(UserInputError):
    """Relations do not generate an admissible ideal (or the length cap was hit)."""


class SpecParseError(UserInputError):
    """Spec-file syntax or semantic error, with line/column info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", col {column}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")


class SearchCapError(HomrangeError):
    """An enumeration would exceed its candidate cap; carries the estimate."""

    def __init__(self, message, estimate=None, cap=None):
        self.estimate = estimate
        self.cap = cap
        super().__init__(message)


class DecisionUndecidedError(HomrangeError):
    """An exact decision (e.g. char-0 splitting) is out of the supported scope."""


class InternalCheckError(HomrangeError):
    """A certificate or a proved inequality failed to verify at runtime."""
