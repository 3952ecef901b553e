"""Exception hierarchy shared by all coxwalk modules."""


class CoxwalkError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedType(CoxwalkError, ValueError):
    pass


class RankTooLarge(CoxwalkError):
    pass


class DimensionMismatch(CoxwalkError, ValueError):
    pass


class ZeroRealPart(CoxwalkError, ValueError):
    pass


class StateSpaceTooLarge(CoxwalkError):
    pass


class NotIrreducible(CoxwalkError):
    pass


class NotDominant(CoxwalkError):
    pass


class ZeroDirection(CoxwalkError):
    pass


class NoSuchEdge(CoxwalkError, KeyError):
    pass


class SingularSystem(CoxwalkError, ArithmeticError):
    pass


class NonStabilizing(CoxwalkError):
    pass


class ProfileMismatch(CoxwalkError):
    pass


class NotGrassmannian(CoxwalkError, ValueError):
    pass


class NotAntiDominant(CoxwalkError, ValueError):
    pass


class ZeroDegree(CoxwalkError, ValueError):
    pass
