"""Exception hierarchy.

Input errors (bad dimensions, malformed files) and domain errors (the geometry
does not admit the request) are kept apart so the CLI can map them to
different exit codes.
"""


class QuatHypError(Exception):
    pass


class InputError(QuatHypError, ValueError):
    pass


class DimensionError(InputError):
    pass


class DomainError(QuatHypError, ValueError):
    pass


class SignError(DomainError):
    """A point has the wrong sign (negative/isotropic/positive) for the request."""


class DegenerateError(DomainError):
    """Singular Gram matrix, degenerate span, or boundary of a moduli set."""


class CoincidentPointsError(DomainError):
    pass


class NotCongruentError(DomainError):
    pass
