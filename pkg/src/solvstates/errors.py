"""Exception types shared across the package."""


class SolvStatesError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SolvStatesError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class LambdaRejected(DomainError):
    """Squeezing parameter outside the admissible half plane."""

    #: machine-readable reason codes
    LAMBDA_MINUS_ONE = "lambda_minus_one"
    NONPOSITIVE_REAL_PART = "nonpositive_real_part"

    def __init__(self, lam, reason):
        self.lam = lam
        self.reason = reason
        super().__init__(f"lambda={lam} rejected: {reason}")


class ConvergenceError(SolvStatesError, ArithmeticError):
    """A series, quadrature, or integration failed to converge."""


class TruncationError(SolvStatesError):
    """Basis truncation too small for the requested tolerance."""

    def __init__(self, message, suggested_n_max=None):
        if suggested_n_max is not None:
            message = f"{message} (suggest n_max >= {suggested_n_max})"
        self.suggested_n_max = suggested_n_max
        super().__init__(message)
