"""Exception hierarchy shared by all modules."""


class QuadError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuadError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class RangeError(DomainError):
    """A rule order lies outside the supported range."""


class RootFindingError(QuadError, ArithmeticError):
    """Safeguarded Newton iteration failed to converge."""


class EvaluationError(QuadError):
    """The integrand failed while being evaluated at a node or term."""

    def __init__(self, message, *, index=None):
        super().__init__(message)
        self.index = index


class HypothesisError(QuadError):
    """An operator does not satisfy the exactness hypothesis of a theorem.

    This is kept distinct from a failing inequality: a refuted hypothesis
    says nothing about the conclusion. ``raw`` optionally carries the values
    that were computed anyway, for comparison.
    """

    def __init__(self, message, *, report=None, raw=None):
        super().__init__(message)
        self.report = report
        self.raw = raw
