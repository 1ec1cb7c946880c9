"""Exception taxonomy shared by the engine.

Exit-code mapping lives in the CLI: input problems are distinct from
precision exhaustion, which is distinct from a verified negative result.
"""

from __future__ import annotations


class GeodexError(Exception):
    """Base class for all engine errors."""


class InputError(GeodexError):
    """Invalid input: schema violations, broken invariants, bad dimensions."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class DegenerateError(InputError):
    """An eigenvalue-one block was supplied to machinery that only supports
    nondegenerate return maps."""


class WindowError(InputError):
    """A Morse window cannot be certified closed with the given iterate bound."""


class CertificateError(InputError):
    """A jump certificate violates one of its defining constraints."""


class PrecisionError(GeodexError):
    """An interval-valued quantity straddles an integer, so a floor/ceiling
    style operation refuses to answer.  The caller must supply tighter
    decimal bounds."""


class SearchExhausted(GeodexError):
    """Bounded certificate search ended without an admissible pair.

    Carries the best near-miss seen so the caller can widen the bounds
    sensibly.
    """

    def __init__(self, message: str, near_miss: dict | None = None):
        self.near_miss = near_miss
        super().__init__(message)


class ContradictionError(GeodexError):
    """A configuration is internally impossible: a deduction forced by the
    certificate contradicts the stored descriptor data."""
