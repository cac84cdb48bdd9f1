"""Exception types shared across the package."""


class RangeError(OverflowError):
    """A value left the floating-point range (e.g. exp or cosh overflow)."""


class WindingError(ArithmeticError):
    """Numerical winding integral did not land near an integer."""


class NonConvergence(ArithmeticError):
    """Quadrature refinement did not reach the requested tolerance."""

    def __init__(self, message, value=None, err_est=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class GaussMapSyntaxError(ValueError):
    """Malformed Gauss map expression; ``column`` is 1-based."""

    def __init__(self, message, column, text=""):
        super().__init__(f"{message} at column {column}")
        self.column = column
        self.text = text


class WindingZero(GaussMapSyntaxError):
    """Expression has rotation number zero (q^0 or no q^n factor)."""


class IndexOverflow(GaussMapSyntaxError):
    """Exponent polynomial index outside [-64, 64]."""


class HypothesisViolation(ValueError):
    """Surface components do not share one orientation."""


class NotApplicable(ValueError):
    """Comparison line is undefined because h is not monotone."""
