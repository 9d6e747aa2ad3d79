"""Exception and warning types."""


class NHQAError(Exception):
    """Base class for numerical failures raised by this package."""


class IntegrationError(NHQAError):
    """The adaptive integrator could not proceed (step underflow, tolerance)."""

    def __init__(self, message, t=None):
        super().__init__(message if t is None else f"{message} (at t = {t!r})")
        self.t = t


class FullyDecayedError(IntegrationError):
    """Both amplitudes fell below the representable floor."""


class ConvergenceError(NHQAError):
    """A special-function evaluation failed in the named regime."""

    def __init__(self, regime, message):
        super().__init__(f"[{regime}] {message}")
        self.regime = regime


class DeskScaleError(ValueError):
    """Dense N-level construction requested above the desk-scale cap."""


class AsymptoticRegimeWarning(UserWarning):
    """An asymptotic formula was evaluated outside its regime of validity."""

