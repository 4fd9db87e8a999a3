"""Exception hierarchy shared by every module."""


class CylHardyError(Exception):
    """Base class for all package errors."""


class DomainError(CylHardyError, ValueError):
    """An argument lies outside the range where a formula or inequality holds."""


class NoExtremalError(DomainError):
    """The sharp constant exists but is not attained (endpoint cases)."""


class DegenerateInputError(DomainError):
    """Identically vanishing profile, zero mass, or similar."""


class ResolutionError(CylHardyError):
    """A sampling grid is too coarse or too short for the requested accuracy."""


class AccuracyError(CylHardyError):
    """An iterative numerical method did not reach its tolerance.

    The best available estimate is kept on ``best`` so callers may decide
    whether it is still usable.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class SpectrumError(CylHardyError):
    """Discrete-spectrum request that cannot be honoured."""


class DomainTooSmallError(SpectrumError, ResolutionError):
    """Eigenvector does not decay before the Dirichlet wall."""

    def __init__(self, message, suggested_half_width=None):
        super().__init__(message)
        self.suggested_half_width = suggested_half_width
