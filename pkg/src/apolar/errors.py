"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`ApolarError`.
The CLI maps :class:`PreconditionError` (and subclasses) to exit code 2 and
:class:`VerificationError` to exit code 1.
"""


class ApolarError(Exception):
    """Base class for all library errors."""


class PreconditionError(ApolarError, ValueError):
    """An input violates the documented precondition of an operation."""


class DimensionMismatchError(PreconditionError):
    """Operands live in different rings (variable count, field or truncation)."""


class CharacteristicError(PreconditionError):
    """The field characteristic is not allowed for the requested operation."""


class NotAutomorphismError(PreconditionError):
    """A substitution does not define an automorphism of the truncated ring."""


class InsufficientPrecisionError(PreconditionError):
    """A truncation degree is too small for an exact answer."""


class UndefinedApolarError(PreconditionError):
    """The zero polynomial has no apolar algebra."""

    def __init__(self, msg="zero polynomial has no apolar algebra"):
        super().__init__(msg)


class NotZeroDimensionalError(PreconditionError):
    """The quotient by an ideal is not finite dimensional."""


class RootAvailabilityError(PreconditionError):
    """Required roots of a univariate polynomial are not in the base field."""


class HypothesisNotMetError(PreconditionError):
    """The hypothesis of a construction is not satisfied by the input."""


class BudgetExceededError(ApolarError):
    """A resource cap from ``APOLAR_BUDGET`` was exceeded."""


class VerificationError(ApolarError):
    """A computed identity failed to verify."""


class ParseError(PreconditionError):
    """Syntax error in a polynomial expression, with a source span."""

    def __init__(self, message, text, start, end=None):
        self.message = message
        self.text = text
        self.start = start
        self.end = start + 1 if end is None else end
        super().__init__(self._render())

    def _render(self):
        caret = " " * self.start + "^" * max(1, self.end - self.start)
        return f"{self.message} at column {self.start + 1}\n  {self.text}\n  {caret}"
