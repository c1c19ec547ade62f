"""Exception types raised throughout :mod:`fusionlab`."""

from __future__ import annotations

__all__ = ['FusionLabError', 'InvalidLevel', 'SignMismatch', 'ParityError', 'LevelMismatch',
           'PrecisionUnavailable', 'Unsupported', 'InternalDispatchGap', 'UnknownCheck',
           'LabelSyntaxError']


class FusionLabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLevel(FusionLabError, ValueError):
    """The level is outside the range supported by an algebra."""


class SignMismatch(FusionLabError, ValueError):
    """A sign decoration was supplied where none is allowed, or omitted where one is required."""


class ParityError(FusionLabError, ValueError):
    """``i + j + l`` is odd where an even sum is required."""


class LevelMismatch(FusionLabError, ValueError):
    """Two values built for different levels were combined."""


class PrecisionUnavailable(FusionLabError, ValueError):
    """More digits were requested than the configured precision ceiling allows."""


class Unsupported(FusionLabError, NotImplementedError):
    """The requested quantity has no closed form available for this label kind."""


class InternalDispatchGap(FusionLabError, RuntimeError):
    """A fusion input matched no clause (or several) of the dispatch table.

    This indicates a defect in the clause table and should never be seen in practice.
    """


class UnknownCheck(FusionLabError, ValueError):
    """A verification check name is not recognized."""


class LabelSyntaxError(FusionLabError, ValueError):
    """A label string does not follow the label grammar or is out of range."""
