"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad user input: malformed surface spec, mismatched classes, etc."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer came out fractional.

    This never signals bad input; it means an internal invariant broke.
    """
