"""Exception hierarchy shared by every module."""


class QTJantzenError(Exception):
    """Base class for library errors."""


class ValidationError(QTJantzenError):
    """Bad user input (unknown type, malformed monomial, bad parity...)."""


class NotInLattice(ValidationError):
    pass


class WeightMismatch(ValidationError):
    pass


class NotComparable(ValidationError):
    pass


class InsufficientPrecision(QTJantzenError):
    """A valuation could not be certified below the truncation order."""

    def __init__(self, msg, order=None):
        super().__init__(msg)
        self.order = order


class SingularAtZero(QTJantzenError):
    pass


class NonTermination(QTJantzenError):
    def __init__(self, cap):
        super().__init__(f"support exceeded the monomial cap ({cap})")
        self.cap = cap


class AlgorithmFailure(QTJantzenError):
    """Internal consistency check failed; indicates a bug or unsupported datum."""


class ValidationFailure(AlgorithmFailure):
    pass


class TriangularityViolation(AlgorithmFailure):
    pass


class NotScalar(AlgorithmFailure):
    pass


class NormalizationFailure(AlgorithmFailure):
    pass
