"""Exceptions raised by the treeproj library. The CLI maps them to exit codes."""

from typing import Optional


class TreeProjError(Exception):
    """Base class for every library error."""


class ParameterError(TreeProjError, ValueError):
    """A tree order, level count, cardinality or node id is out of range."""


class SignalError(TreeProjError, ValueError):
    """A coefficient vector has the wrong length or non-finite entries."""


class EnumerationTooLarge(TreeProjError):
    """The oracle would have to enumerate more supports than the configured ceiling."""

    def __init__(self, count: int, ceiling: int):
        self.count = count
        self.ceiling = ceiling
        super().__init__(
            f"Enumeration of {count} rooted trees exceeds the ceiling of {ceiling} "
            f"(raise it with --max-enum)."
        )


class BoundOverflow(TreeProjError, OverflowError):
    """The operation bound 3*d^2*N*k + N does not fit a signed 64-bit integer."""


class InputFormatError(TreeProjError):
    """A coefficient file could not be parsed or has an unusable length."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
