"""Exception hierarchy shared by every module.

Each exception carries a ``payload`` dict that the CLI serialises verbatim
into its structured error report.
"""

from __future__ import annotations

from typing import Any


class QuasiTreeError(Exception):
    """Base class. ``exit_code`` is the CLI status this error maps to."""

    exit_code = 3

    def __init__(self, message: str, **payload: Any) -> None:
        super().__init__(message)
        self.payload = payload

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **self.payload}


class SelfLoop(QuasiTreeError):
    pass


class VertexOutOfRange(QuasiTreeError):
    pass


class TooLarge(QuasiTreeError):
    pass


class InvalidDecomposition(QuasiTreeError):
    pass


class NotClean(QuasiTreeError):
    pass


class SearchCapExceeded(QuasiTreeError):
    pass


class PreconditionViolation(QuasiTreeError):
    """An input assumption (K*-freeness, rho bound, set size) fails.

    When raised by a builder, ``payload["X"]`` is a concrete vertex set that
    refutes the claimed parameters.
    """

    exit_code = 2


class PatternPresent(QuasiTreeError):
    """A forbidden pattern was found; ``payload["witness"]`` re-verifies."""

    exit_code = 2


class ListsTooSmall(QuasiTreeError):
    exit_code = 2


class HeavyCapViolated(QuasiTreeError):
    exit_code = 2


class UnknownFamily(QuasiTreeError):
    pass


class BadParams(QuasiTreeError):
    pass


class ParseError(QuasiTreeError):
    def __init__(self, message: str, line: int | None = None, **payload: Any) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line, **payload)
