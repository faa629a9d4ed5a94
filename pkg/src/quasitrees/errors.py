"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class QuasiTreeError(Exception):
    """Base class for all package errors."""


class ParseError(QuasiTreeError, ValueError):
    """Input text could not be turned into a signed rotation.

    ``position`` is the character offset of the offending token (or ``None``
    when the problem is global, e.g. a missing end).
    """

    def __init__(self, message: str, text: str = "", position: int | None = None):
        super().__init__(message)
        self.text = text
        self.position = position

    def diagnostic(self) -> str:
        """Message plus the input line with a caret under the bad token."""
        lines = [str(self)]
        if self.text and self.position is not None:
            lines.append(self.text)
            lines.append(" " * self.position + "^")
        return "\n".join(lines)


class MalformedToken(ParseError):
    pass


class DuplicateEnd(ParseError):
    pass


class MissingEnd(ParseError):
    pass


class IndexOutOfRange(QuasiTreeError, IndexError):
    pass


class RequiresIStrictlyLessThanJ(QuasiTreeError, ValueError):
    pass


class MalformedRibbonGraph(QuasiTreeError, ValueError):
    pass


class EdgeNotPresent(QuasiTreeError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class SizeCapExceeded(QuasiTreeError):
    pass


class DeterminantOverflow(QuasiTreeError, OverflowError):
    pass


class SingularPivotBlock(QuasiTreeError, ValueError):
    pass


class NotConnected(QuasiTreeError, ValueError):
    pass


class NotAQuasiTree(QuasiTreeError, ValueError):
    def __init__(self, message: str, components: int):
        super().__init__(message)
        self.components = components


class NotABouquet(QuasiTreeError, ValueError):
    pass


class ImproperSystem(QuasiTreeError, ValueError):
    pass


class SubsetOutOfGround(QuasiTreeError, ValueError):
    pass
