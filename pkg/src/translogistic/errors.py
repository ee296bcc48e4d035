"""Exception and warning types raised across the package."""


class TransseriesError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(TransseriesError, ValueError):
    """Invalid map configuration (initial value or parameter out of range)."""


class DomainEscapeError(TransseriesError):
    """The dynamic map parameter exceeded 4 during iteration.

    Attributes
    ----------
    n : int
        Step index at which the parameter first exceeded 4.
    """

    def __init__(self, n, parameter):
        self.n = n
        self.parameter = parameter
        super().__init__(f"map parameter {parameter!r} exceeds 4 at step n={n}")


class ComplexCycleError(TransseriesError, ValueError):
    """The requested cycle has complex (non-real) points."""


class SolverError(TransseriesError):
    """An iterative solver failed to converge."""


class ResonanceError(TransseriesError, ZeroDivisionError):
    """A recurrence bracket vanished.

    Attributes
    ----------
    m : int
        Exponential order at which the bracket vanished.
    point : float
        Value of the expansion variable at which it vanished.
    """

    def __init__(self, m, point):
        self.m = m
        self.point = point
        super().__init__(f"recurrence bracket vanishes at m={m}, point={point!r}")


class InsufficientOrderError(TransseriesError, ValueError):
    """A requested expansion order exceeds the implemented data."""


class OrderBudgetError(InsufficientOrderError):
    """A jet ran out of Taylor coefficients."""


class ConsistencyError(TransseriesError, ArithmeticError):
    """A quantity that must be real carries a non-negligible imaginary part."""


class PoleError(TransseriesError, ZeroDivisionError):
    """Evaluation requested exactly at a pole or branch point."""


class RegimeError(TransseriesError, ValueError):
    """Parameter lies outside the regime in which the approximation applies."""


class RangeError(TransseriesError, ValueError):
    """Argument lies outside the sampled range."""


class UnclassifiedError(TransseriesError, ValueError):
    """A slope is not a dyadic multiple of pi."""


class SingularError(TransseriesError, ZeroDivisionError):
    """Evaluation at a removable or genuine singularity."""


class ParseError(TransseriesError, ValueError):
    """Malformed input file.

    Attributes
    ----------
    line : int
        1-based line number of the offending record.
    """

    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UsageError(TransseriesError, ValueError):
    """Invalid request made through the public interface."""


class BranchWarning(RuntimeWarning):
    """An argument is close to a branch cut or branch point."""


class OverlayWarning(UserWarning):
    """A reference overlay was empty or had to be realigned."""
