"""Exceptions shared across the package."""
from __future__ import annotations


class KDoubleError(Exception):
    """Base class for all package-specific errors."""


class GroupNotExponentTwo(KDoubleError):
    """An operation that needs every group element to square to the identity got a bigger group."""


class NonIsolatedBaseLocus(KDoubleError):
    """The canonical system contains a whole curve, so counting base points makes no sense."""


class UnknownFormat(KDoubleError):
    """An output format name is not one of text, json, latex."""


class UnknownFamily(KDoubleError):
    """A family label is not one of the eleven classified families."""
