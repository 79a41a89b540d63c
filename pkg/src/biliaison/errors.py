"""Exception hierarchy shared by all engine layers."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class PolynomialSyntaxError(AlgebraError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(AlgebraError):
    pass


class NonHomogeneousError(AlgebraError):
    pass


class DegreeMismatchError(AlgebraError):
    pass


class CapExceededError(AlgebraError):
    pass


class NotMinimalError(AlgebraError):
    pass


class NotFiniteLengthError(AlgebraError):
    pass


class NotACocycleError(AlgebraError):
    pass


class NotRankOneError(AlgebraError):
    pass


class NotRankTwoError(AlgebraError):
    pass


class ConditionTFailedError(AlgebraError):
    pass


class QuotientNotTError(AlgebraError):
    pass


class WrongHeightError(AlgebraError):
    pass


class RankTooSmallError(AlgebraError):
    pass


class GenericityFailure(AlgebraError):
    """Random draws exhausted without meeting the verified postcondition."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BadSurfaceError(AlgebraError):
    pass


class TwistsNotComparableError(AlgebraError):
    pass


class KernelNotDissocieError(AlgebraError):
    pass


class NotExtravertiError(AlgebraError):
    pass


class AlphaNotSurjectiveError(AlgebraError):
    pass


class NotMCMError(AlgebraError):
    pass


class UnsupportedRingError(AlgebraError):
    pass


class InvalidCurveError(AlgebraError):
    pass
