"""Exception hierarchy shared by every module."""


class TTGError(Exception):
    """Base class for workbench errors."""


class InputError(TTGError, ValueError):
    """Unknown identifier, mismatched base space or malformed argument."""


class ContractError(TTGError, ValueError):
    """An operation was called outside its precondition."""


class NotRepresentableError(ContractError):
    """A table support admits no universal map into the base space."""


class ResourceCapError(TTGError):
    """A requested enumeration exceeds the configured size cap."""


class TheoremViolation(TTGError, AssertionError):
    """A proven identity failed on an applicable instance.

    This always indicates an implementation bug, never a property verdict.
    """


class LocatedError(TTGError):
    """An error tied to a position in a workbench file."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self):
        if self.line:
            return f"{self.line}:{self.col}: {self.message}"
        return self.message


class ParseError(LocatedError, InputError):
    """Syntax error in a workbench file."""


class SemanticError(LocatedError, ContractError):
    """Well-formed text that does not describe valid structures."""
