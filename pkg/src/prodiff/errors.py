"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto its exit-code contract: malformed input exits 2,
violated operation preconditions exit 3, and internal invariant failures
(which indicate a bug, never bad user input) exit 4.
"""

from __future__ import annotations


class ProdiffError(Exception):
    """Base class for all library errors."""


class InputFormatError(ProdiffError):
    """Malformed input object; ``key`` names the offending field when known."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message if key is None else f"{message} (key: {key})")
        self.key = key


class PreconditionError(ProdiffError):
    """An operation was called outside its documented domain."""


class InvariantViolation(ProdiffError):
    """An internal consistency check failed; this is a bug, not bad input."""


class LPInfeasibleError(ProdiffError):
    """The linear program has no feasible point."""


class LPUnboundedError(ProdiffError):
    """The linear program objective is unbounded below."""
