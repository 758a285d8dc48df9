"""Exception hierarchy.

Every error raised for a violated mathematical precondition derives from
:class:`MathDomainError`; the CLI maps those to exit code 3.
"""


class MathDomainError(ValueError):
    """Base class for violated mathematical preconditions."""


class AlgebraMismatch(MathDomainError):
    pass


class SingularElement(MathDomainError):
    pass


class NotInCone(MathDomainError):
    pass


class MinorVanishes(MathDomainError):
    pass


class OutsideDomain(MathDomainError):
    pass


class PoleHit(MathDomainError):
    pass


class WeightTooLarge(MathDomainError):
    pass


class NonIntegerDimension(MathDomainError):
    """d_m came out non-integral; indicates a bug in the Jack engine."""


class ArgumentOffVariety(MathDomainError):
    pass


class PochhammerZero(MathDomainError):
    pass


class ParameterOutOfRange(MathDomainError):
    pass


class UnsupportedAlgebra(MathDomainError):
    pass


class GrowthIncompatible(MathDomainError):
    pass


class QuadratureNotConverged(MathDomainError):
    pass
