"""Exception hierarchy shared by all fairplay modules."""


class FairplayError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FairplayError, ValueError):
    """A numeric argument is outside its legal domain (non-finite rating,
    k <= 0, points outside [0, n], ...)."""


class DomainError(FairplayError, ValueError):
    """The inputs are individually valid but the request makes no sense for
    them (e.g. imputing a game that was actually played)."""


class DegenerateContextError(DomainError):
    """Not enough observed games to apply the requested estimator."""


class UnsupportedMethodError(DomainError):
    """The operation is defined for a different imputation method."""


class InsufficientDataError(DomainError):
    """Cross-validation needs at least two played games."""


class TournamentFileError(FairplayError, ValueError):
    """A tournament document failed validation.

    ``path`` points at the offending field, e.g. ``games[3].result``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
