"""Typed failures; each maps to a CLI exit code."""


class ZsigramError(Exception):
    exit_code = 1


class ParseError(ZsigramError):
    """Malformed expression; carries a 1-based line/column."""

    exit_code = 1

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class RestrictionError(ZsigramError):
    """The computation needs points that are not rational over the base field."""

    exit_code = 2


class HypothesisError(ZsigramError):
    """A theorem-level hypothesis fails (postcritically finite, exceptional, d < 2)."""

    exit_code = 3


class ResourceLimitError(ZsigramError):
    exit_code = 4


class PreconditionError(ZsigramError, ValueError):
    """An operation was called outside its domain; ``hypothesis`` names the failed one."""

    def __init__(self, hypothesis, message=None):
        super().__init__(message or f"precondition failed: {hypothesis}")
        self.hypothesis = hypothesis


class CertificateInapplicable(PreconditionError):
    pass
