"""Exception hierarchy shared by all bohrad modules."""


class BohradError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(BohradError):
    """A value object or CLI invocation was assembled inconsistently."""


class DomainError(BohradError, ValueError):
    """An argument lies outside its mathematical domain (e.g. r >= 1)."""


class NonConvergenceError(BohradError):
    """A truncated series could not be certified to the requested tolerance."""


class NoRootError(BohradError):
    """No sign change was found while scanning (0, 1).

    ``all_positive`` / ``all_negative`` record which side the scanned
    values stayed on, so callers can distinguish "inequality never
    binds" from "inequality always violated".
    """

    def __init__(self, message, all_positive=False, all_negative=False):
        super().__init__(message)
        self.all_positive = all_positive
        self.all_negative = all_negative


class InfeasibleError(BohradError):
    """A calibration has no admissible solution (positivity violated)."""


class SingularIntegrandError(BohradError):
    """A density blew up on the integration circle."""


class InvalidTestFunctionError(BohradError):
    """A test function fails the hypothesis it was supposed to satisfy."""
