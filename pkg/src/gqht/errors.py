"""Exception hierarchy shared by every module in the package."""


class GQHTError(Exception):
    """Base class for all package errors."""


class SizeError(GQHTError, ValueError):
    """A register, vector or matrix has an unsupported size."""


class DomainError(GQHTError, ValueError):
    """A numeric input lies outside the domain an operation accepts."""


class ArgumentError(GQHTError, ValueError):
    """Arguments are inconsistent with each other."""


class DataError(GQHTError, ValueError):
    """A dataset violates a requirement (labels, classes, constant features)."""


class BalanceError(DataError):
    """Class counts differ where a balanced training set is required."""


class ParseError(GQHTError, ValueError):
    """A text input could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(GQHTError, ValueError):
    """An experiment configuration failed validation.

    ``problems`` lists ``(field_path, message)`` pairs.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        text = "; ".join(f"{path}: {msg}" for path, msg in self.problems)
        super().__init__(f"invalid configuration: {text}")
