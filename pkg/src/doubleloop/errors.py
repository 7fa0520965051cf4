from __future__ import annotations


class DoubleLoopError(Exception):
    """Base class for library errors."""


class BoundsError(DoubleLoopError, ValueError):
    """A size parameter is outside the supported range."""


class DomainError(DoubleLoopError, ValueError):
    """Arguments are individually valid but do not fit together."""


class InputError(DoubleLoopError, ValueError):
    """User-supplied tables or data are malformed or incomplete."""


class IntegrityError(DoubleLoopError):
    """An invariant that must hold by construction failed (e.g. a boundary squares to nonzero)."""
