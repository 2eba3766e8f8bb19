"""Error taxonomy.

Every failure mode that a caller may want to distinguish gets its own
exception class.  The CLI maps each family to a stable process exit code
via the ``exit_code`` attribute; 0 is success and 1 is reserved for
unexpected crashes.
"""

from __future__ import annotations

__all__ = [
    "HoloError",
    "InconsistentPresentation",
    "OrderCapExceeded",
    "UnsupportedPreset",
    "NotAGroup",
    "NotNormal",
    "SearchBudgetExceeded",
    "HypothesisViolated",
    "UnsupportedModuli",
    "ShapeMismatch",
    "NotInNHol",
    "NoIsomorphism",
    "ClosureFailure",
    "MismatchFound",
    "CacheCorrupt",
]


class HoloError(Exception):
    """Base class for all library errors."""

    exit_code = 10


class InconsistentPresentation(HoloError):
    """The presentation data fails a structural or consistency check."""

    exit_code = 11


class OrderCapExceeded(HoloError):
    """Declared group order exceeds the configured cap."""

    exit_code = 12


class UnsupportedPreset(HoloError):
    """Unknown preset name or invalid preset parameters."""

    exit_code = 13


class NotAGroup(HoloError):
    """A multiplication table fails the group axioms."""

    exit_code = 14


class NotNormal(HoloError):
    """Quotient was requested by a subgroup that is not normal."""

    exit_code = 15


class SearchBudgetExceeded(HoloError):
    """A backtracking search exceeded its propagation-step budget."""

    exit_code = 16


class HypothesisViolated(HoloError):
    """A gamma function does not satisfy the hypotheses an operation needs."""

    exit_code = 17


class UnsupportedModuli(HoloError):
    """Bilinear solver cannot handle the section moduli it was given."""

    exit_code = 18


class ShapeMismatch(HoloError):
    """Group does not have the shape an operation requires."""

    exit_code = 19


class NotInNHol(HoloError):
    """A permutation does not normalize the holomorph."""

    exit_code = 20


class NoIsomorphism(HoloError):
    """An isomorphism was required but none exists."""

    exit_code = 21


class ClosureFailure(HoloError):
    """A set expected to be closed under multiplication is not."""

    exit_code = 22


class MismatchFound(HoloError):
    """A reproduction suite computed a value that disagrees with the record."""

    exit_code = 23


class CacheCorrupt(HoloError):
    """A cache entry failed verification on reload."""

    exit_code = 24
