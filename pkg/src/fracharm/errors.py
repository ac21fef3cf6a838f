"""Exception types raised across the package."""


class FracHarmError(Exception):
    """Base class for all package errors."""


class NonHermitianSymbol(FracHarmError):
    pass


class MeanNotZero(FracHarmError):
    pass


class GridMismatch(FracHarmError):
    pass


class OrderTooHigh(FracHarmError):
    pass


class GridTooSmall(FracHarmError):
    pass


class ShellOutOfRange(FracHarmError):
    pass


class BadExponent(FracHarmError):
    pass


class DimensionMismatch(FracHarmError):
    pass


class GradeError(FracHarmError):
    pass


class NonOrthonormalFrame(FracHarmError):
    pass


class NearZeroVector(FracHarmError):
    pass


class WrongDimension(FracHarmError):
    pass


class NonZeroOrder(FracHarmError):
    pass


class DegreeTooHigh(FracHarmError):
    pass


class UnknownEstimate(FracHarmError):
    pass


class StepFailure(FracHarmError):
    pass


class ConfigError(FracHarmError):
    pass


class DivisionByZero(FracHarmError):
    pass
