class CuspLabError(Exception):
    """Base class for all library errors."""


class DomainError(CuspLabError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class IncompatibleFieldError(DomainError):
    """Operands live in different quadratic fields."""


class UnsupportedError(CuspLabError):
    """Valid input that this tool deliberately does not handle."""


class PresentationError(CuspLabError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
