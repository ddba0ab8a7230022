"""Exception hierarchy shared by every lipdyn module."""

from __future__ import annotations


class LipdynError(Exception):
    """Base class for all errors raised by lipdyn."""


class DomainError(LipdynError, ValueError):
    """An argument lies outside the domain of the requested operation.

    Unknown vertices, eigenvalues outside the admissible disc and similar
    mistakes land here.
    """


class SpecError(LipdynError, ValueError):
    """A tree, symbol or vector specification failed validation."""


class ContractError(LipdynError):
    """A precondition that is not a plain domain check was violated.

    Typical cause: a symbol lacking the strictly-increasing hypotheses was
    handed to the hypercyclicity classifier.
    """


class TruncationError(LipdynError):
    """A finite presentation is not deep enough for the requested computation.

    ``required`` carries the depth, row count or column count that would
    have been needed, when it is known.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class VerificationError(LipdynError):
    """An identity that must hold exactly was found to fail."""
