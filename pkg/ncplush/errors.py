"""Exception hierarchy shared by the ncplush library."""

from typing import Optional


class NCPlushError(Exception):
    """Base class for every error raised by ncplush."""


class PreconditionError(NCPlushError, ValueError):
    """An operation was called outside its documented precondition."""


class ContextMismatchError(NCPlushError, ValueError):
    """Two polynomials over different variable counts were combined."""


class VariableIndexError(NCPlushError, ValueError):
    """A variable index lies outside 1..g."""


class ParseError(NCPlushError, ValueError):
    """The input text does not match the polynomial grammar."""

    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class MalformedRationalError(ParseError):
    """A coefficient such as ``3/0`` could not be read as a rational."""


class ParseIndexError(ParseError, VariableIndexError):
    """A variable in the input text has an index outside 1..g."""


class NotIntegrableError(NCPlushError):
    """Raised by the integration entry points; carries the failing report."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class MalformedSystemError(NCPlushError, ValueError):
    """A Frobenius system component uses a direction letter of another index."""


class HessianFormError(NCPlushError, ValueError):
    """A polynomial handed to the Gram stage is not shaped like a complex hessian."""


class EvaluationError(NCPlushError, ValueError):
    """Matrix substitution failed (missing direction tuple, size mismatch)."""
