"""Exception types shared by the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class OracleMismatch(AssertionError):
    """Two independent computations of the same quantity disagree."""


class BudgetExhausted(RuntimeError):
    """An enumeration stopped before covering its whole search space."""
