"""Exception hierarchy.

Every error raised on purpose by the package derives from ``AdhesionError``.
Input problems also derive from ``ValueError`` so that generic callers can
catch them the usual way; solver failures derive from ``RuntimeError``.
"""


class AdhesionError(Exception):
    """Base class for all package errors."""


class ValidationError(AdhesionError, ValueError):
    """An argument or constructed object violates its invariants."""


class DomainError(AdhesionError, ValueError):
    """A function was evaluated outside the set where it is defined."""


class UnsupportedLawError(AdhesionError, TypeError):
    """A closed-form entry point received a drag law it cannot handle."""


class DegenerateScenarioError(DomainError):
    """The body never moves (v0 = 0), so position-based quantities are undefined."""


class RangeExceededError(DomainError):
    """A position at or beyond the finite travel range of an alpha < 1 law."""

    def __init__(self, message, max_range=None):
        super().__init__(message)
        self.max_range = max_range


class NoSolutionError(DomainError):
    """The requested target is never reached (e.g. doubling with zero drag)."""


class BracketError(AdhesionError, ValueError):
    """A root-finding bracket does not straddle a sign change."""


class UnidentifiableError(ValidationError):
    """The sample set carries no information about the fitted parameters."""


class NonConvergenceError(AdhesionError, RuntimeError):
    """An iterative solver ran out of budget before meeting its tolerance.

    ``best_estimate`` holds the last iterate, when one exists.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class SingularityError(NonConvergenceError):
    """The ODE step size underflowed, typically next to a finite-time blow-up."""

    def __init__(self, message, last_t=None, best_estimate=None):
        super().__init__(message, best_estimate)
        self.last_t = last_t
