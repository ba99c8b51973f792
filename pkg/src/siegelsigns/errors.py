"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SiegelSignsError(Exception):
    exit_code = 1


class ParseError(SiegelSignsError):
    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingPrimeError(SiegelSignsError, KeyError):
    exit_code = 3

    def __init__(self, p, label=None):
        self.p = p
        self.label = label
        where = f" in form {label!r}" if label else ""
        super().__init__(f"no Hecke data for prime {p}{where}")

    def __str__(self):
        return self.args[0]


class PrecisionExhaustedError(SiegelSignsError, ArithmeticError):
    exit_code = 4


class PreconditionError(SiegelSignsError, ValueError):
    exit_code = 5


class InvalidIndexError(PreconditionError):
    pass


class RepeatedParameterError(PreconditionError):
    pass


class ConsistencyError(SiegelSignsError, AssertionError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 6
