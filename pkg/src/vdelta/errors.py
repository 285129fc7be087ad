"""Exception types raised by the engine."""

from __future__ import annotations


class VDeltaError(Exception):
    """Base class for all domain errors."""


class GaussParseError(VDeltaError, ValueError):
    """Malformed Gauss code text.

    ``position`` is the 0-based character offset where the problem was found.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidDiagramError(VDeltaError, ValueError):
    pass


class ChordNotFoundError(VDeltaError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "chord not found"


class MoveError(VDeltaError, ValueError):
    """A move or macro was not applicable at the requested site."""


class UnsupportedError(VDeltaError, ValueError):
    """The operation is not defined for this kind of diagram."""


class ResourceError(VDeltaError, RuntimeError):
    """A configured computation budget would be exceeded."""
