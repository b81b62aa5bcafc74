"""Exception types shared across the package."""


class ReasonerError(Exception):
    """Base class for every error raised by galcq."""


class DegreeRangeError(ReasonerError, ValueError):
    """A truth degree fell outside [0, 1]."""


class ParseError(ReasonerError):
    """Malformed input text; carries an optional source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class LocalityError(ParseError):
    """The ABox is not local (role assertions or several individuals)."""


class BudgetExceededError(ReasonerError):
    """A configured resource budget (nodes, steps, enumeration size) ran out."""


class MalformedModelError(ReasonerError):
    """A classical model violates the order axioms it was supposed to satisfy."""

    def __init__(self, node, detail):
        self.node = node
        self.detail = detail
        super().__init__(f"node {node}: {detail}")
