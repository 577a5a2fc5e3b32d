"""Exception hierarchy shared by every quadlie module.

``ParseError`` signals malformed input (CLI exit code 2); everything else
derived from ``QuadLieError`` is a domain error (CLI exit code 1).
"""

from __future__ import annotations


class QuadLieError(Exception):
    """Base class for all library errors."""


class ParseError(QuadLieError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class DomainError(QuadLieError):
    """Input lies outside the domain an operation is defined on."""


class FactorBoundExceeded(DomainError):
    pass


class SplitFailure(DomainError):
    """A polynomial does not split into linear factors over Q(i)."""

    def __init__(self, residual, roots=()):
        self.residual = residual
        self.roots = tuple(roots)
        super().__init__(f"polynomial does not split over Q(i); residual factor {residual}")


class InternalInvariantError(QuadLieError):
    """An internal consistency check failed; indicates invalid input that slipped through."""


class CayleyPoleError(DomainError):
    pass


class NonSplitForm(DomainError):
    pass


class NotSkewError(DomainError):
    pass


class NotInvariantError(DomainError):
    pass


class ZeroDegreeError(DomainError):
    pass


class AbelianError(DomainError):
    pass


class NotSolvable(DomainError):
    pass


class ExtractionFailure(DomainError):
    pass


class NotRecognized(DomainError):
    pass


class NotAdmissiblePartition(DomainError):
    pass


class NotNilpotent(DomainError):
    pass


class NotInvertible(DomainError):
    pass
