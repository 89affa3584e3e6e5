"""Exception hierarchy for rfbvp.

Parameter and input problems derive from :class:`ValueError`; numerical
failures of the linear solve derive from :class:`ArithmeticError`.
"""


class ParameterError(ValueError):
    """An (alpha, theta) pair outside the admissible region."""


class OrderOutOfRange(ParameterError):
    pass


class OrderSingular(ParameterError):
    pass


class SkewnessOutOfRange(ParameterError):
    pass


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class InvalidDomain(ValueError):
    """Malformed spatial domain (R <= L or too few sub-intervals)."""


class DimensionMismatch(ValueError):
    pass


class ProfileError(ValueError):
    """Observed profile fails validation (ordering, bounds, point count)."""


class SolverError(ArithmeticError):
    pass


class SingularMatrix(SolverError):
    pass


class NonFinite(SolverError):
    pass


class NoFeasiblePoint(RuntimeError):
    """Every coarse-grid sample of the fit objective was infeasible or failed."""


class ConditioningWarning(UserWarning):
    """Order alpha lies close to the singular value alpha = 1."""
