"""Exception types shared across the package.

Input and precondition problems raise subclasses of :class:`MixkitError`
so the CLI can map them to a uniform exit code.  InternalInconsistency is
different: it means two independent computations of the same quantity
disagreed, which is a bug in this package, never a user error.
"""

from __future__ import annotations


class MixkitError(Exception):
    """Base class for all expected (user-facing) errors."""


class GroupParseError(MixkitError):
    """Malformed group expression.  Carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ElementParseError(MixkitError):
    pass


class ContainsZero(MixkitError):
    pass


class NotSymmetric(MixkitError):
    pass


class NotGenerating(MixkitError):
    pass


class NotIntegral(MixkitError):
    pass


class ZeroShift(MixkitError):
    pass


class NotTwoGroup(MixkitError):
    pass


class NotOddPGroup(MixkitError):
    pass


class DivisibilityPreconditionFailed(MixkitError):
    pass


class NotBent(MixkitError):
    pass


class NotBijection(MixkitError):
    pass


class ZeroInSupport(MixkitError):
    pass


class ZeroInS1(MixkitError):
    pass


class EmptyInput(MixkitError):
    pass


class ZeroPolynomial(MixkitError):
    pass


class GroupTooLarge(MixkitError):
    pass


class LevelMismatch(MixkitError):
    pass


class InternalInconsistency(Exception):
    """Two supposedly equivalent computations disagreed.  Always a bug."""
