class SumregError(Exception):
    """Base class for errors raised by this package."""


class OrderError(SumregError, ValueError):
    """Register order is out of range or two objects disagree on it."""


class CapExceeded(SumregError, ValueError):
    """Exhaustive enumeration was requested above the configured order cap."""


class JoinError(SumregError, ValueError):
    """The requested state pair is not shared by the two cycles."""


class GenerationError(SumregError):
    """The generator closed its cycle after the wrong number of steps."""

    def __init__(self, message, steps):
        super().__init__(message)
        self.steps = steps


class ConsistencyError(SumregError, AssertionError):
    """An internal invariant failed (inexact division, corrupt generator state)."""
