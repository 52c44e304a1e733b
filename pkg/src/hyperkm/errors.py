"""Exception hierarchy.

Every error raised by the library derives from :class:`DomainError`, which the
CLI maps to exit status 1.
"""


class DomainError(ValueError):
    """Base class for mathematical-domain failures."""

    code = "DomainError"


class NonCartan(DomainError):
    code = "NonCartan"


class Decomposable(DomainError):
    code = "Decomposable"


class NotSymmetrizable(DomainError):
    code = "NotSymmetrizable"


class NotAffine(DomainError):
    code = "NotAffine"


class NotFinite(DomainError):
    code = "NotFinite"


class UnknownType(DomainError):
    code = "UnknownType"


class HalfIntegerCoordinates(DomainError):
    code = "HalfIntegerCoordinates"


class NotRealRoot(DomainError):
    code = "NotRealRoot"


class NotRoot(DomainError):
    code = "NotRoot"


class ZeroVector(DomainError):
    code = "ZeroVector"


class NotLightcone(DomainError):
    code = "NotLightcone"


class WrongLevel(DomainError):
    code = "WrongLevel"


class HeightOverflow(DomainError):
    code = "HeightOverflow"


class EngineInconsistency(DomainError):
    """The multiplicity recursion produced a value that cannot be a dimension."""

    code = "EngineInconsistency"


class NotPositiveReal(DomainError):
    code = "NotPositiveReal"


class NoDescent(DomainError):
    code = "NoDescent"


class SameLine(DomainError):
    code = "SameLine"


class NotAPolygon(DomainError):
    code = "NotAPolygon"


class NonIntegralIndex(DomainError):
    code = "NonIntegralIndex"


class NegativeGeneratorCount(DomainError):
    code = "NegativeGeneratorCount"


class NegativeMu(DomainError):
    code = "NegativeMu"
