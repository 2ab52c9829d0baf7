"""Exception types shared across the package.

Exit-code mapping used by the CLI: UsageError -> 1, ParseError (and
subclasses) -> 2, MathPreconditionError (and subclasses) -> 3.
"""


class DpresError(Exception):
    pass


class ConfigurationError(DpresError):
    """Mismatched ring/field contexts between operands."""


class UsageError(DpresError):
    """Bad command-line invocation."""


class ParseError(DpresError):
    """Syntax or validation error in a .dpm file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HomogeneityError(ParseError):
    """A matrix entry whose degree disagrees with the declared twists."""


class MathPreconditionError(DpresError):
    """Input violates a mathematical precondition of the requested operation."""


class SymmetricMinimizationUnsupported(MathPreconditionError):
    """Symmetry-preserving minimization is not available; use minimize()."""
