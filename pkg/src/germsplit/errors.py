"""Exception types shared across the package, with CLI exit codes."""


class GermsplitError(Exception):
    """Base class for package errors."""

    exit_code = 1
    code = "E_INTERNAL"


class ParseError(GermsplitError):
    """Syntax error in an expression or problem file."""

    exit_code = 2
    code = "E_PARSE"

    def __init__(self, message, position=None, line=None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where += f" (line {line}"
            where += f", col {position + 1})" if position is not None else ")"
        elif position is not None:
            where += f" (col {position + 1})"
        super().__init__(message + where)


class ValidationError(GermsplitError):
    """Input violates a declared precondition or file invariant."""

    exit_code = 3
    code = "E_VALIDATION"


class CocycleError(GermsplitError):
    """The commutation hypothesis fails, or a linear system is inconsistent."""

    exit_code = 4
    code = "E_COCYCLE"


class ToleranceError(GermsplitError):
    """A numeric cross-check exceeded its tolerance."""

    exit_code = 5
    code = "E_TOLERANCE"


class InternalError(GermsplitError):
    """Exact invariant that should be unreachable failed; a defect signal."""

    code = "E_DEFECT"
