"""Exception hierarchy.  The CLI maps these onto exit codes."""


class ExtremeregError(Exception):
    """Base class for all library errors."""


class RingMismatchError(ExtremeregError, ValueError):
    """Operands live in different rings."""


class PreconditionError(ExtremeregError, ValueError):
    """Input violates an operation's precondition (bad params, bad shape)."""


class InhomogeneousError(PreconditionError):
    """A generator is not homogeneous for the ring grading."""


class ZeroPolynomialError(ExtremeregError, ValueError):
    """The zero polynomial has no degree / leading term."""


class ResourceLimitError(ExtremeregError, RuntimeError):
    """A configured pair or basis-size budget was exceeded."""


class ParseError(ExtremeregError, ValueError):
    """Malformed polynomial or ideal-file text, with 1-based line/column."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
