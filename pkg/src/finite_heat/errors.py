"""Exception hierarchy shared by every module in the package."""


class FiniteHeatError(Exception):
    pass


class ZeroDenominator(FiniteHeatError, ZeroDivisionError):
    pass


class TruncationError(FiniteHeatError):
    """A requested coefficient lies below the retained truncation floor."""


class LogObstruction(FiniteHeatError):
    """The antiderivative of a rational function is not rational."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularDiagonal(FiniteHeatError):
    pass


class NotMultiplicationOperator(FiniteHeatError):
    pass


class FactorizationFailed(FiniteHeatError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ResidualNonzero(FiniteHeatError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class IdentityFailed(FiniteHeatError):
    def __init__(self, message, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class EigenCheckFailed(FiniteHeatError):
    pass


class ResidueNonzero(FiniteHeatError):
    pass


class NonRationalResult(FiniteHeatError):
    pass
