"""Exception hierarchy."""


class IsorevError(ValueError):
    pass


class NonUnitScalar(IsorevError):
    pass


class DimensionMismatch(IsorevError):
    pass


class NotUnitary(IsorevError):
    pass


class EigensolverFailure(IsorevError):
    pass


class TagMismatch(IsorevError):
    pass


class NotInGroup(IsorevError):
    pass


class IllConditioned(IsorevError):
    pass


class CriterionUnsatisfied(IsorevError):
    pass


class Infeasible(IsorevError):
    pass


class PreconditionViolated(IsorevError):
    pass


class InvalidFamilyParams(IsorevError):
    pass


class WitnessVerificationError(IsorevError):
    """A constructed witness failed its own residual contract."""


class MalformedInput(IsorevError):
    pass
