"""Exceptions raised by the composition laws and the law checker.

``DomainError`` subclasses describe inputs outside the domain of a
composition law; the CLI reports them by class name and exits with 3.
"""


class VelcompError(Exception):
    pass


class DomainError(VelcompError):
    pass


class Superluminal(DomainError):
    pass


class MixedContext(DomainError):
    pass


class DegenerateDenominator(DomainError):
    pass


class ComplexVelocity(DomainError):
    """A complex vector was handed to an operation defined on real velocities."""


class NonFinite(DomainError):
    pass


class LawNotApplicable(VelcompError, ValueError):
    """The requested law has no defect functional for the requested operation."""
