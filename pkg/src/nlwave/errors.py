"""Exception types raised across the package."""


class NlwaveError(Exception):
    """Base class for all package errors."""


class NonPositiveParameter(NlwaveError, ValueError):
    pass


class OutOfTableRange(NlwaveError, ValueError):
    pass


class DecayConditionViolated(NlwaveError, ValueError):
    pass


class NonPositiveSymbol(NlwaveError, ValueError):
    """A kernel symbol is not strictly positive on the grid wavenumbers."""


class LengthMismatch(NlwaveError, ValueError):
    pass


class NonRealResult(NlwaveError, ValueError):
    pass


class NonFiniteState(NlwaveError, FloatingPointError):
    pass


class ZeroDenominator(NlwaveError, ZeroDivisionError):
    pass


class SingularSymbol(NlwaveError, ZeroDivisionError):
    pass


class SpeedTooSlow(NlwaveError, ValueError):
    pass


class DivergenceDetected(NlwaveError, ArithmeticError):
    pass


class NotConverged(NlwaveError):
    """Petviashvili iteration hit ``max_iter`` without reaching ``tol``.

    The last iterate and the full report travel with the exception so
    callers (sweeps, the CLI) can still record them.
    """

    def __init__(self, message, profile=None, report=None):
        super().__init__(message)
        self.profile = profile
        self.report = report


class EarlyTermination(NlwaveError):
    """An evolution stopped before ``t_end`` where a full run was expected."""


class ConfigError(NlwaveError, ValueError):
    """Invalid scenario configuration. ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
