"""Exception types raised across the package."""


class BiunivError(ValueError):
    """Base class for all domain errors raised by :mod:`biuniv`."""


class DomainError(BiunivError):
    """A parameter lies outside the domain where an object is defined."""


class NotNormalized(BiunivError):
    """A series was expected to satisfy ``c0 = 0`` and ``c1 = 1``."""


class NonzeroConstantTerm(BiunivError):
    """The inner series of a composition has a nonzero constant term."""


class InconsistentPair(BiunivError):
    """A Schwarz pair violates ``q1 = -p1``."""


class BoundUndefined(BiunivError):
    """A closed-form bound has a nonpositive radicand or a zero denominator."""


class DegenerateDenominator(BiunivError):
    """A re-derived bound divides by a (numerically) vanishing quantity."""
