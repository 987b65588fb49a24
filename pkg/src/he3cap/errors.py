"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input is outside its physical domain (polarization, probability, ...)."""


class InvalidQuantumNumberError(ValueError):
    """A (j, m) pair is inconsistent: parity mismatch, |m| > j, or j < 0."""


class UnsupportedRadicandError(ArithmeticError):
    """A square-root product left the supported field Q + Q*sqrt(2).

    This cannot happen for the couplings handled here; seeing it means an
    internal inconsistency, so callers should not catch it routinely.
    """


class ModeMismatchError(ValueError):
    """A channel or operation was requested under the wrong capture mode."""


class DegenerateDesignError(ValueError):
    """The measurement design cannot identify all channel strengths."""

    def __init__(self, message: str, combination: dict[str, float] | None = None):
        super().__init__(message)
        self.combination = combination or {}


class LevelNotFoundError(LookupError):
    """No reference level matches the requested quantum numbers."""
