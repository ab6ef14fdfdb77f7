"""Exception types shared across the package."""


class RotohullError(Exception):
    """Base class for all library errors."""


class EmptyInput(RotohullError):
    """An operation that needs at least one point received none."""


class NonFinite(RotohullError):
    """A coordinate is NaN or infinite."""


class DuplicatePoint(RotohullError):
    """Two input points have exactly equal coordinates."""


class PreconditionTheta(RotohullError):
    """A sweep that requires every wedge aperture >= pi/2 was asked to run
    on a direction set with a smaller minimum aperture."""


class CursorExhausted(RotohullError):
    """A rotation cursor was advanced past a full cycle without reset."""


class InconsistentEvent(RotohullError):
    """A release event arrived for an overlap key that is not currently
    active; signals a corrupted event schedule."""
