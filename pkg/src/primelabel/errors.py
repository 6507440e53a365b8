"""Exception types shared across the package."""


class PrimeLabelError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(PrimeLabelError, ValueError):
    pass


class ResourceLimitError(PrimeLabelError):
    """A value or allocation would exceed a configured or 64-bit limit."""


class ParseError(PrimeLabelError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
