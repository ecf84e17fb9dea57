"""Exception types shared across the package."""


class VeroneseLabError(Exception):
    """Base class for all errors raised by veronese_lab."""


class InvalidInputError(VeroneseLabError, ValueError):
    """Malformed or inconsistent input data (bad field, bad coordinates, ...)."""


class CapExceededError(InvalidInputError):
    """A combinatorial or size guard was exceeded."""


class PreconditionError(VeroneseLabError, ValueError):
    """An operation was called outside the hypotheses it is valid for."""
