"""Exception hierarchy shared by every module.

The CLI maps the three top-level families onto exit codes:
``InputError`` -> 2, ``MathError`` -> 3, ``ResourceBound`` -> 4.
"""

from __future__ import annotations


class CircPersError(Exception):
    """Base class for all library errors."""


class InputError(CircPersError):
    """Malformed input document or value."""


class MathError(CircPersError):
    """Mathematically invalid or incompatible request."""


class DimensionError(MathError):
    pass


class DomainError(MathError):
    pass


class Incompatible(MathError):
    """Objects live over different quivers or fields."""


class Unsupported(MathError):
    pass


class NonSplitField(MathError):
    """Factorization needed beyond what the active field support offers."""

    def __init__(self, message: str, poly: object = None):
        super().__init__(message)
        self.poly = poly


class CyclicOrientation(MathError):
    pass


class MalformedQuiver(MathError):
    pass


class LeavesHeart(MathError):
    """A boundary move would produce an object outside the module category."""


class NotIndecomposable(MathError):
    pass


class CertificateFailure(MathError):
    """No isomorphism certificate was found; indicates an internal bug."""


class ResourceBound(CircPersError):
    """A configured size cap was exceeded."""
