"""Exception hierarchy shared by every module."""


class QfcriError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QfcriError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(QfcriError, ValueError):
    """A model or configuration parameter violates its constraints."""


class ParseError(QfcriError, ValueError):
    """A model spec, config file or data file could not be parsed."""


class DivergenceError(QfcriError, ArithmeticError):
    """An integral diverges or quadrature failed to meet tolerance."""


class ConvergenceError(QfcriError, ArithmeticError):
    """Root finding failed to bracket or converge."""


class SingularityError(QfcriError, ArithmeticError):
    """A quantity is undefined because a denominator vanishes."""


class DegeneracyError(QfcriError, ArithmeticError):
    """A ratio has a (numerically) zero denominator."""


class InfiniteTermError(QfcriError, ArithmeticError):
    """An estimator term is infinite under the selected CDF convention."""
