"""Exception hierarchy shared by the library and the command line."""


class HRLError(Exception):
    """Base class for all errors raised by :mod:`hrl`."""


class InvalidInput(HRLError, ValueError):
    """An operation received an argument outside its domain (e.g. the zero polynomial)."""


class ContractViolation(HRLError, ValueError):
    """A documented precondition was not met by the caller."""


class ParseError(HRLError, ValueError):
    def __init__(self, message, source="", position=None):
        self.source = source
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if source:
                message += f"\n  {source}\n  {' ' * position}^"
        super().__init__(message)


class ValidationError(HRLError, ValueError):
    """A recurrence pair or spec does not meet the criterion's input requirements."""


class ConvergenceError(HRLError, RuntimeError):
    """A required numeric step failed to converge."""
