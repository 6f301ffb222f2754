"""Exception hierarchy shared by all modules."""


class FiniteQGError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(FiniteQGError):
    pass


class NotHermitian(FiniteQGError):
    pass


class NotPositiveDefinite(FiniteQGError):
    pass


class Singular(FiniteQGError):
    pass


class GramNotPD(FiniteQGError):
    pass


class NotUnitary(FiniteQGError):
    pass


class SpanDeficient(FiniteQGError):
    pass


class Inconsistent(FiniteQGError):
    pass


class NoPositiveSolution(FiniteQGError):
    pass


class NonUnique(FiniteQGError):
    pass


class InvalidTable(FiniteQGError):
    pass


class NotInAlgebra(FiniteQGError):
    pass


class PhaseMismatch(FiniteQGError):
    pass


class ValidationFailed(FiniteQGError):
    pass


class VersionUnsupported(FiniteQGError):
    pass


class SpecInvalid(FiniteQGError):
    pass
