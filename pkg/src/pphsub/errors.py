class SubdivisionError(Exception):
    """Base class for errors raised by this package."""


class LengthError(SubdivisionError, ValueError):
    """Sequence too short for the requested stencil, difference or level."""


class PolicyError(SubdivisionError, ValueError):
    """Boundary policy cannot be applied to the given data."""


class InvariantError(SubdivisionError, RuntimeError):
    """An internal consistency check failed (e.g. non-finite output)."""
