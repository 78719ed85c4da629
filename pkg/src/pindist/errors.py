"""Shared exception types."""


class MismatchError(ValueError):
    """Operands belong to different fields, rings, or dimensions."""


class NotAUnitError(ZeroDivisionError):
    """Inversion requested for an element with no multiplicative inverse."""


class CapacityError(RuntimeError):
    """An enumeration or sweep would exceed its configured cap."""
