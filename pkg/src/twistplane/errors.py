"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``MathRejection`` subclasses become
exit status 2, ``WindowError`` becomes 3, and ``ParseError`` becomes 1.
"""

from __future__ import annotations

from typing import Any


class TwistError(Exception):
    """Base class for all package errors."""

    def certificate(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


class ParseError(TwistError, ValueError):
    """Malformed scalar, matrix or parameter input."""


class MathRejection(TwistError):
    """The requested object does not exist for mathematical reasons."""


class ExcludedPoint(MathRejection, ValueError):
    """A parameter point outside the domain of an operation."""


class Rejected(MathRejection):
    """Parameters that can never give a twisting map."""


class Rerouted(MathRejection):
    """Parameters that belong to a different family constructor."""

    def __init__(self, message: str, target: str) -> None:
        super().__init__(message)
        self.target = target

    def certificate(self) -> dict[str, Any]:
        return {**super().certificate(), "target": self.target}


class Obstruction(MathRejection):
    """A recursive construction hit a vanishing obstruction polynomial."""

    def __init__(self, message: str, index: int, poly: str, value: Any) -> None:
        super().__init__(message)
        self.index = index
        self.poly = poly
        self.value = value

    def certificate(self) -> dict[str, Any]:
        return {
            **super().certificate(),
            "index": self.index,
            "poly": self.poly,
            "value": str(self.value),
        }


class BandViolation(TwistError, ValueError):
    """A primary matrix row has a nonzero entry beyond its band profile."""

    def __init__(self, row: int, col: int) -> None:
        super().__init__(f"nonzero entry at ({row}, {col}) outside the band")
        self.row = row
        self.col = col


class WindowError(TwistError, IndexError):
    """A query or product fell outside the trusted window of rows."""


class SequenceError(MathRejection, ValueError):
    """A sequence prefix is malformed or not quasi-balanced."""

    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness

    def certificate(self) -> dict[str, Any]:
        cert = super().certificate()
        if self.witness is not None:
            cert["witness"] = self.witness.to_json()
        return cert


class SequenceTooShort(SequenceError):
    """A sequence prefix does not determine all rows of the requested window."""
