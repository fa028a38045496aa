"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ConvinvError(Exception):
    """Base class for all library errors."""


class InvalidDigraph(ConvinvError, ValueError):
    pass


class LoopArc(InvalidDigraph):
    pass


class DigonArc(InvalidDigraph):
    pass


class OutOfRange(InvalidDigraph):
    pass


class DuplicateArc(InvalidDigraph):
    pass


class NotATournament(InvalidDigraph):
    pass


class OrderCapExceeded(ConvinvError):
    pass


class EdgeCapExceeded(ConvinvError):
    pass


class ArcAbsent(ConvinvError, ValueError):
    pass


class BiasOutOfRange(ConvinvError, ValueError):
    pass


class IndexOutOfRange(ConvinvError, ValueError):
    pass


class InconsistentDegrees(ConvinvError, ValueError):
    pass


class NotATree(ConvinvError, ValueError):
    pass


class Acyclic(ConvinvError, ValueError):
    pass


class DegreeZero(ConvinvError, ValueError):
    pass


class NotRegular(ConvinvError, ValueError):
    pass


class NotTransitivePair(ConvinvError, ValueError):
    pass


class AlreadyAdjacent(ConvinvError, ValueError):
    pass


class DegreeTooSmall(ConvinvError, ValueError):
    pass


class NotADoubleStar(ConvinvError, ValueError):
    pass


class MaxDegreeTooSmall(ConvinvError, ValueError):
    pass


class Disconnected(ConvinvError, ValueError):
    pass


class FormatError(ConvinvError, ValueError):
    """Malformed serialized input."""


class BadHeader(FormatError):
    pass


class BadLength(FormatError):
    pass


class NonPrintableByte(FormatError):
    pass
