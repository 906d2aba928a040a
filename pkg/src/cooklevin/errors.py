"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CookLevinError(Exception):
    """Base class for all errors raised by this package."""


# machine documents


class MachineSpecError(CookLevinError):
    """Malformed or inconsistent machine document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownState(MachineSpecError):
    pass


class UnknownSymbol(MachineSpecError):
    pass


class MissingSection(MachineSpecError):
    pass


class DuplicateSection(MachineSpecError):
    pass


class BadMoveLetter(MachineSpecError):
    pass


# execution and encoding


class NotDeterministic(CookLevinError):
    pass


class LayoutOverflow(CookLevinError):
    pass


class MalformedModel(CookLevinError):
    pass


# formulas and solving


class IncompleteAssignment(CookLevinError):
    pass


class DimacsError(CookLevinError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadHeader(DimacsError):
    pass


class LiteralOutOfRange(DimacsError):
    pass


class MissingTerminator(DimacsError):
    pass


class TooManyVariables(CookLevinError):
    pass


class ProjectionTooLarge(CookLevinError):
    pass
